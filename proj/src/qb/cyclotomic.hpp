#pragma once

#include "rational.hpp"

#include <map>
#include <vector>

namespace qb {

// Exact element of the cyclotomic field Q(zeta_M), zeta_M = exp(2*pi*i/M).
// Stored on the power basis 1, zeta, ..., zeta^(phi(M)-1), i.e. reduced modulo
// the M-th cyclotomic polynomial, so equal values have identical representations
// at a fixed modulus and zero tests are exact.
class CycQ {
  public:
    CycQ() : modulus_(1) {}
    explicit CycQ(const Rat& r) : modulus_(1) {
        if (r != 0) coeffs_[0] = r;
    }
    explicit CycQ(long long n) : CycQ(Rat(n)) {}

    // exact value e(a) = exp(2*pi*i*a) for rational a
    static CycQ root_of_unity(const Rat& a);

    static CycQ zero() { return CycQ(); }
    static CycQ one() { return CycQ(Rat(1)); }

    long long modulus() const { return modulus_; }
    const std::map<long long, Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const;
    // throws if not rational
    Rat rational_value() const;

    CycQ operator-() const;
    CycQ& operator+=(const CycQ& o);
    CycQ& operator-=(const CycQ& o);
    CycQ& operator*=(const CycQ& o);
    friend CycQ operator+(CycQ a, const CycQ& b) { return a += b; }
    friend CycQ operator-(CycQ a, const CycQ& b) { return a -= b; }
    friend CycQ operator*(CycQ a, const CycQ& b) { return a *= b; }

    CycQ& operator*=(const Rat& r);
    friend CycQ operator*(CycQ a, const Rat& r) { return a *= r; }
    friend CycQ operator*(const Rat& r, CycQ a) { return a *= r; }

    CycQ inverse() const; // throws std::domain_error on zero
    friend CycQ operator/(const CycQ& a, const CycQ& b) { return a * b.inverse(); }

    bool operator==(const CycQ& o) const;
    bool operator!=(const CycQ& o) const { return !(*this == o); }
    // total order making maps deterministic; not a numeric order
    bool operator<(const CycQ& o) const;

    // lossless lift into Q(zeta_Mp), M | Mp
    CycQ embedded(long long new_modulus) const;
    // exact reduction into Q(zeta_Mp) for Mp | M; returns false if the value
    // does not lie in the subfield
    bool try_reduce(long long new_modulus, CycQ& out) const;
    // smallest-divisor modulus representation (used for output)
    CycQ reduced() const;

    // complex conjugate (zeta -> zeta^-1)
    CycQ conj() const;

    std::string str() const;

  private:
    long long modulus_;
    std::map<long long, Rat> coeffs_; // exponent in [0, phi(M)) -> nonzero coefficient

    void reduce_mod_cyclotomic(std::map<long long, Rat>& raw) const;
    static void align(CycQ& a, CycQ& b);
};

// cyclotomic polynomial Phi_M as dense integer coefficient vector, cached
const std::vector<Int>& cyclotomic_poly(long long M);
long long euler_phi(long long M);

} // namespace qb
