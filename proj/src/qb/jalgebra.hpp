#pragma once

#include "jets.hpp"

#include <map>

namespace qb {

// Symbolic closure of the rank-n strictly meromorphic generator ring: polynomials in
// theta, its log-derivative, the weight-2/3 elliptic kernels at subset-sum arguments,
// and the global quasimodular constants. Negative exponents are allowed on theta
// factors. The derivation tables below are grounded against exact jets by
// verify_derivation_tables() before the commutator tests use them.
struct JAtom {
    enum Kind { TH, A, E2, E3, GE2, G4, G6 } kind;
    IVec arg; // subset-sum direction; empty for the global constants

    bool operator<(const JAtom& o) const { return std::tie(kind, arg) < std::tie(o.kind, o.arg); }
    bool operator==(const JAtom& o) const { return kind == o.kind && arg == o.arg; }
    int weight() const;
};

class JPoly {
  public:
    using Mono = std::map<JAtom, int>;

    JPoly() = default;
    static JPoly constant(const Rat& r);
    static JPoly atom(JAtom::Kind kind, const IVec& arg = {}, int exponent = 1);

    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Mono& m, const Rat& c);

    JPoly& operator+=(const JPoly& o);
    friend JPoly operator+(JPoly a, const JPoly& b) { return a += b; }
    friend JPoly operator-(JPoly a, const JPoly& b) { return a += b * Rat(-1); }
    friend JPoly operator*(const JPoly& a, const JPoly& b);
    JPoly operator*(const Rat& r) const;
    bool operator==(const JPoly& o) const { return terms_ == o.terms_; }

    bool is_homogeneous(int* weight = nullptr) const;

    std::string str() const;

  private:
    std::map<Mono, Rat> terms_;
};

JPoly apply_D_tau(const JPoly& f);
JPoly apply_D_z(const JPoly& f, int u);
JPoly apply_delta_tau(const JPoly& f);
JPoly apply_delta_z(const JPoly& f, int u);
JPoly apply_W(const JPoly& f);             // weight operator (homogeneous input)
JPoly apply_I(const JPoly& f, int u, int v); // index operator

// evaluate a polynomial whose atoms all have single-variable argument {1} as a
// rank-1 jet (used to ground the tables)
JetForm evaluate_rank1(const JPoly& f, int hi, const Rat& q_trunc);

// exact jet cross-check of every derivation-table entry; throws on mismatch
void verify_derivation_tables(int hi, const Rat& q_trunc);

} // namespace qb
