#pragma once

#include "json_codec.hpp"
#include "qseries.hpp"

#include <map>
#include <vector>

namespace qb {

// Element of the level-1 quasimodular ring Q[G2, G4, G6], graded by weight with
// deg G_k = k; the G2-degree is the depth.
class QMPoly {
  public:
    struct Mono {
        int a = 0, b = 0, c = 0; // exponents of G2, G4, G6
        int weight() const { return 2 * a + 4 * b + 6 * c; }
        bool operator<(const Mono& o) const {
            return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
        }
        bool operator==(const Mono& o) const { return a == o.a && b == o.b && c == o.c; }
    };

    QMPoly() = default;
    static QMPoly generator(int k); // G2, G4 or G6
    static QMPoly constant(const Rat& r);

    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous(int* weight = nullptr) const;
    int weight() const; // throws NotHomogeneous
    int depth() const;  // max G2-degree

    QMPoly& operator+=(const QMPoly& o);
    QMPoly& operator-=(const QMPoly& o);
    friend QMPoly operator+(QMPoly a, const QMPoly& b) { return a += b; }
    friend QMPoly operator-(QMPoly a, const QMPoly& b) { return a -= b; }
    friend QMPoly operator*(const QMPoly& a, const QMPoly& b);
    QMPoly operator*(const Rat& r) const;
    bool operator==(const QMPoly& o) const { return terms_ == o.terms_; }

    void set(const Mono& m, const Rat& r);

    QSeries expand(const Rat& trunc) const;

    // formal G2-derivative scaled by -1/2 (the depth-lowering derivation)
    QMPoly delta_tau() const;
    // weight operator: k * f on homogeneous f
    QMPoly weight_op() const;
    // q d/dq computed by expansion and exact re-certification at weight + 2
    QMPoly d_tau() const;
    // Serre derivative D - e2 * weight = D + 2k G2
    QMPoly serre() const;

    std::string str() const;

  private:
    std::map<Mono, Rat> terms_;
};

struct SpanElement {
    std::string name;
    QSeries series;
    int depth = 0;
};

// Level 1: all monomials G2^a G4^b G6^c of the given weight with a <= depth —
// exact and complete. Levels 2..4: heuristic family of rescaled generators and
// torsion weight-1 series, closed under weight; completeness is not guaranteed.
std::vector<SpanElement> spanning_set(long long level, int weight, int depth, const Rat& trunc);

struct Certificate {
    enum class Status { certified, failed, inconclusive };
    Status status = Status::failed;
    std::string target;
    int weight = 0;
    long long level = 1;
    int depth = 0;
    std::vector<std::string> basis;
    std::vector<CycQ> solution;
    long long solve_order = 0;
    long long margin = 0;

    bool ok() const { return status == Status::certified; }
    json to_json() const;
};

// Exact membership check of the target in the span: solve on the first |span|
// coefficient slots, then verify on at least `margin` further slots. A failed
// exact solve is conclusive at level 1 and downgrades to `inconclusive` at
// higher levels (heuristic spanning sets).
Certificate certify(const QSeries& target, int weight, long long level, int depth, long long margin,
                    const std::string& name = "series");

// reconstruct the certified combination as a QMPoly (level 1 only)
QMPoly qmpoly_from_certificate(const Certificate& cert);

} // namespace qb
