#pragma once

#include "cyclotomic.hpp"
#include "errors.hpp"

#include <map>
#include <optional>

namespace qb {

// Truncated Puiseux series in q over Q(zeta): sparse exponent -> coefficient map
// with exponents in (1/D)Z, valid strictly below the truncation order `trunc`.
// Truncation is tracked through every operation; comparing or reading beyond it
// throws TruncationUnderflow.
class QSeries {
  public:
    explicit QSeries(Rat trunc = Rat(0)) : trunc_(std::move(trunc)) {}

    static QSeries zero(const Rat& trunc) { return QSeries(trunc); }
    static QSeries constant(const CycQ& c, const Rat& trunc);
    static QSeries monomial(const Rat& exp, const CycQ& c, const Rat& trunc);

    const Rat& trunc() const { return trunc_; }
    Rat floor_exp() const; // lowest stored exponent (trunc if empty)
    long long denom() const; // lcm of exponent denominators (>= 1)

    const std::map<Rat, CycQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set(const Rat& e, CycQ c);
    void add_to(const Rat& e, const CycQ& c);
    CycQ coeff(const Rat& e) const; // throws TruncationUnderflow if e >= trunc

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator*(const CycQ& c) const;
    QSeries operator*(const Rat& c) const;

    // inverse of a series whose lowest-order coefficient is a unit;
    // throws NotAUnit when the series is zero up to trunc
    QSeries inverse() const;
    QSeries operator/(const QSeries& b) const { return *this * b.inverse(); }

    // q^e -> q^(e/N): implements q -> q^(1/N)
    QSeries scale_exponents(long long N) const;
    // substitute q -> q^N (rescaled generator G(N*tau)); truncation becomes N*trunc
    QSeries dilate(long long N) const;

    // q d/dq, termwise e * q^e
    QSeries derivative_qdq() const;

    // restrict truncation downward
    QSeries truncated(const Rat& new_trunc) const;
    // multiply by q^s exactly (shifts trunc as well)
    QSeries shifted(const Rat& s) const;

    // equality up to min(trunc, o.trunc); throws if that window is empty below `need`
    bool equal_up_to(const QSeries& o, const Rat& order) const;
    bool operator==(const QSeries& o) const; // structural, incl. trunc

    std::string str(int max_terms = 12) const;

  private:
    Rat trunc_; // exclusive upper bound on valid exponents
    std::map<Rat, CycQ> terms_;
    void drop_beyond_trunc();
};

} // namespace qb
