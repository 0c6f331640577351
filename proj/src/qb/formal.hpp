#pragma once

#include "partition.hpp"

#include <map>

namespace qb {

// Formal graded algebra in the symbols Q_k(a), k >= 1, a in Q mod 1, with weight k
// per symbol. Q_0(a) never appears as a symbol: it is the constant beta_0(a)
// (1 for integral a, 0 otherwise) and is folded into coefficients on sight.
// The exponent of the level-1 symbol Q_2 may be a non-integral rational; this is
// what the projection identity checks need.
class FormalPoly {
  public:
    struct Gen {
        int k;
        Rat a;
        bool operator<(const Gen& o) const { return std::tie(k, a) < std::tie(o.k, o.a); }
        bool operator==(const Gen& o) const { return k == o.k && a == o.a; }
    };
    using Monomial = std::map<Gen, Rat>; // symbol -> exponent

    FormalPoly() = default;
    static FormalPoly constant(const CycQ& c);
    static FormalPoly symbol(int k, const Rat& a = Rat(0), const Rat& exponent = Rat(1));

    const std::map<Monomial, CycQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Monomial& m, const CycQ& c);

    FormalPoly& operator+=(const FormalPoly& o);
    friend FormalPoly operator+(FormalPoly a, const FormalPoly& b) { return a += b; }
    friend FormalPoly operator-(FormalPoly a, const FormalPoly& b) { return a += b * CycQ(Rat(-1)); }
    friend FormalPoly operator*(const FormalPoly& a, const FormalPoly& b);
    FormalPoly operator*(const CycQ& c) const;
    bool operator==(const FormalPoly& o) const { return terms_ == o.terms_; }

    bool is_homogeneous(Rat* weight = nullptr) const;
    Rat weight() const; // throws NotHomogeneous

    // partial derivative with respect to one symbol (power rule, rational exponents fine)
    FormalPoly partial(const Gen& g) const;

    // kill every monomial containing a weight-1 symbol (the evaluation morphism sends
    // the level-1 symbol of weight 1 to the zero function)
    FormalPoly dropped_weight1() const;
    // divide by the level-1 Q_2 symbol; throws if some monomial lacks it
    FormalPoly divided_by_q2() const;

    PartitionFunction to_partition_function() const; // integer exponents only

    std::string str() const;

  private:
    std::map<Monomial, CycQ> terms_;
};

// j-th order differential operator: sum over ordered j-tuples of symbols of
// multinomial * Q_{sum(k_t - 1)}(sum a_t) * the corresponding j-fold partial
FormalPoly op_D(int j, const FormalPoly& f);
inline FormalPoly op_partial(const FormalPoly& f) { return op_D(1, f); }

// the correction projection: sum_{r,s} (-1)^s Q2^r partial^(2r-2s) D2^s(f) /
// (2^r (l - r - 3/2)_r (r-s)! s!) on homogeneous f of weight l
FormalPoly pi_bo(const FormalPoly& f);

// h_k = sum_r Q2^r Q_{k-2r} / (2^r (k-r-3/2)_r r!)
FormalPoly h_poly(int k);

// Delta_n = sum_i (-1)^i binom(n,i) partial^i D_{n-i}
FormalPoly op_Delta(int n, const FormalPoly& f);

// f with every symbol Q_n replaced by Delta_n, applied as an operator to arg
// (level-1 integer-exponent f only)
FormalPoly vee_apply(const FormalPoly& f, const FormalPoly& arg);

// right-hand side of the closed projection identity:
// Q2^(l - 3/2) * f_vee(Q2^(3/2)) / ((3/2)-falling-l * l!)
FormalPoly pi_closed_form(const FormalPoly& f);

} // namespace qb
