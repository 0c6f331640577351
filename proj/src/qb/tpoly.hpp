#pragma once

#include "bracket.hpp"

#include <map>

namespace qb {

// Polynomial in the double-moment symbols under the induced product: a monomial is
// a multiset of (k,l) factors. Multiplication is always the induced product, never
// the pointwise one.
class TPoly {
  public:
    using Mono = std::map<std::pair<int, int>, int>;

    TPoly() = default;
    static TPoly constant(const Rat& r);
    static TPoly generator(int k, int l); // requires k >= 0, l >= 1

    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Mono& m, const Rat& c);

    TPoly& operator+=(const TPoly& o);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    TPoly operator*(const Rat& r) const;
    TPoly odot(const TPoly& o) const;
    bool operator==(const TPoly& o) const { return terms_ == o.terms_; }

    int weight() const; // throws NotHomogeneous on mixed weight

    // the derivation matching d/d tau under the bracket:
    // T_{k,l} -> k(l-1) T_{k-1,l-1} for k >= 1, l >= 2; -1/2 at weight 2; 0 otherwise
    TPoly delta() const;
    // projection: sum_r (2^r/r!) T_{1,1}^{(.)r} (.) delta^r(f)
    TPoly pi() const;

    // q-bracket via multiplicativity of the induced product under the bracket
    QSeries bracket(long long T) const;
    // independent route: materialize the induced products on partitions of size <= n
    PartitionFunction to_partition_function(long long n) const;

    std::string str() const;

  private:
    std::map<Mono, Rat> terms_;
};

} // namespace qb
