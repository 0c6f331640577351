#pragma once

#include "cyclotomic.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace qb {

// Integer partition with cached statistics.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<long long> parts);

    const std::vector<long long>& parts() const { return parts_; }
    long long size() const { return size_; }
    long long length() const { return (long long)parts_.size(); }

    // multiplicity of parts equal to m
    long long multiplicity(long long m) const;
    // all (part, multiplicity) pairs, descending part
    std::vector<std::pair<long long, long long>> multiplicities() const;
    // hook lengths of all cells of the Young diagram (|lambda| values)
    const std::vector<long long>& hooks() const;

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator<(const Partition& o) const; // graded reverse-lexicographic

    std::string str() const;

  private:
    std::vector<long long> parts_; // weakly decreasing, positive
    long long size_ = 0;
    mutable std::vector<long long> hooks_; // lazily filled
};

// Streams every partition of every n <= n_max exactly once: sizes ascending,
// graded reverse-lexicographic within a size.
void enumerate_partitions(long long n_max, const std::function<void(const Partition&)>& visit);
std::vector<Partition> partitions_up_to(long long n_max);
// partition counts p(0..n_max) by the pentagonal recurrence
std::vector<Int> partition_counts(long long n_max);

// Exact evaluator lambda -> Q(zeta) with weight/level metadata.
class PartitionFunction {
  public:
    using Eval = std::function<CycQ(const Partition&)>;

    PartitionFunction() = default;
    PartitionFunction(std::string name, int weight, long long level, Eval eval)
        : name_(std::move(name)), weight_(weight), level_(level), eval_(std::move(eval)) {}

    const std::string& name() const { return name_; }
    int weight() const { return weight_; }
    long long level() const { return level_; }
    CycQ operator()(const Partition& p) const { return eval_(p); }

    static PartitionFunction one();
    PartitionFunction operator*(const PartitionFunction& g) const; // pointwise product

  private:
    std::string name_;
    int weight_ = 0;
    long long level_ = 1;
    Eval eval_;
};

// ---- generating constants -------------------------------------------------

// beta_k(a): coefficient of w^(k-1) in e^(w/2) / (e^w e(a) - 1), w = 2*pi*i*z
CycQ beta(int k, const Rat& a);

// moment constants alpha_k(a); see README for the sign and index conventions,
// which are pinned by exactness tests rather than read off a single display
CycQ alpha(int k, const Rat& a);

// hook-moment constants: coefficient-of-w^(k-2) reading of (1/8) sinh((w+2*pi*i*a)/2)^(-2),
// equal to alpha(k, a) for k >= 2
CycQ alpha_tilde(int k, const Rat& a);

// ---- families -------------------------------------------------------------

PartitionFunction pf_Q(int k, const Rat& a = Rat(0));        // shifted symmetric Q_k(.,a)
PartitionFunction pf_Q_gjt(int k, long long m);              // Q_k^(m)
PartitionFunction pf_H(int k, const Rat& a = Rat(0));        // hook-length moments H_k(.,a)
PartitionFunction pf_H_t(int k, long long t);                // H_k^t
PartitionFunction pf_S(int k, const Rat& a = Rat(0));        // moment functions S_k(.,a)
PartitionFunction pf_S_t(int k, long long t);                // S_k^t
PartitionFunction pf_T(int k, int l, const Rat& a = Rat(0), const Rat& b = Rat(0)); // T_{k,l}(.,a,b)
PartitionFunction pf_T_unshifted(int k, int l);              // T_{k,l}
PartitionFunction pf_T_st(int k, int l, long long s, long long t); // T_{k,l}^{s,t}

// Seki-Bernoulli F_l(n) = sum_{i=1..n} i^(l-1), and the e(b)-twisted variant
Rat seki_bernoulli(int l, long long n);
CycQ seki_bernoulli_twisted(int l, const Rat& b, long long n);

} // namespace qb
