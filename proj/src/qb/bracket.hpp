#pragma once

#include "partition.hpp"
#include "qseries.hpp"

#include <map>

namespace qb {

// Euler product prod_{n>=1} (1 - q^n) to the given truncation (pentagonal series);
// this is the exact inverse of the partition generating function.
QSeries euler_product(const Rat& trunc);

// <f>_q to order T inclusive (series trunc T+1); evaluates f only on |lambda| <= T
QSeries qbracket(const PartitionFunction& f, long long T);
// one partition sweep shared by many functions
std::vector<QSeries> qbracket_many(const std::vector<PartitionFunction>& fs, long long T);

// Truncated series in the partition monomials u_lambda (u_lambda u_mu = u_{lambda cup mu}).
class USeries {
  public:
    explicit USeries(long long trunc_size) : trunc_(trunc_size) {}

    long long trunc_size() const { return trunc_; }
    const std::map<Partition, CycQ>& coeffs() const { return coeffs_; }
    CycQ coeff(const Partition& p) const;
    void set(const Partition& p, CycQ c);

    friend USeries operator+(const USeries& a, const USeries& b);
    friend USeries operator-(const USeries& a, const USeries& b);
    friend USeries operator*(const USeries& a, const USeries& b);
    USeries operator*(const CycQ& c) const;

    // inverse of a series with unit coefficient at the empty partition
    USeries inverse() const;

    // u_m -> q^m
    QSeries specialize_q() const;

    bool operator==(const USeries& o) const { return trunc_ == o.trunc_ && coeffs_ == o.coeffs_; }

  private:
    long long trunc_;
    std::map<Partition, CycQ> coeffs_;
};

// sum of u_lambda over all |lambda| <= n
USeries useries_all(long long n);
// its exact inverse: signed sum over partitions into distinct parts
USeries useries_all_inverse(long long n);

// <f>_u with trunc_size n
USeries ubracket(const PartitionFunction& f, long long n);

// induced product: <f (.) g>_u = <f>_u <g>_u; the result is defined on |lambda| <= n
// and throws TruncExceeded beyond that
PartitionFunction odot(const PartitionFunction& f, const PartitionFunction& g, long long n);

} // namespace qb
