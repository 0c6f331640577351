#include "bracket.hpp"

#include "errors.hpp"

#include <algorithm>

namespace qb {

QSeries euler_product(const Rat& trunc) {
    QSeries s(trunc);
    s.set(Rat(0), CycQ::one());
    for (long long k = 1;; ++k) {
        long long g1 = k * (3 * k - 1) / 2;
        long long g2 = k * (3 * k + 1) / 2;
        if (Rat(g1) >= trunc && Rat(g2) >= trunc) break;
        CycQ sign((k % 2 == 1) ? Rat(-1) : Rat(1));
        if (Rat(g1) < trunc) s.set(Rat(g1), sign);
        if (Rat(g2) < trunc) s.set(Rat(g2), sign);
    }
    return s;
}

QSeries qbracket(const PartitionFunction& f, long long T) {
    return qbracket_many({f}, T).front();
}

std::vector<QSeries> qbracket_many(const std::vector<PartitionFunction>& fs, long long T) {
    if (T < 0) throw BadParam("qbracket requires T >= 0");
    Rat trunc(T + 1);
    std::vector<QSeries> numer(fs.size(), QSeries(trunc));
    enumerate_partitions(T, [&](const Partition& p) {
        Rat e(p.size());
        for (size_t i = 0; i < fs.size(); ++i) numer[i].add_to(e, fs[i](p));
    });
    QSeries inv = euler_product(trunc);
    std::vector<QSeries> out;
    out.reserve(fs.size());
    for (auto& n : numer) out.push_back(n * inv);
    return out;
}

CycQ USeries::coeff(const Partition& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? CycQ::zero() : it->second;
}

void USeries::set(const Partition& p, CycQ c) {
    if (p.size() > trunc_) return;
    if (c.is_zero())
        coeffs_.erase(p);
    else
        coeffs_[p] = std::move(c);
}

USeries operator+(const USeries& a, const USeries& b) {
    USeries r(std::min(a.trunc_, b.trunc_));
    for (auto& [p, c] : a.coeffs_)
        if (p.size() <= r.trunc_) r.coeffs_[p] = c;
    for (auto& [p, c] : b.coeffs_) {
        if (p.size() > r.trunc_) continue;
        auto it = r.coeffs_.find(p);
        if (it == r.coeffs_.end())
            r.coeffs_[p] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) r.coeffs_.erase(it);
        }
    }
    return r;
}

USeries operator-(const USeries& a, const USeries& b) { return a + b * CycQ(Rat(-1)); }

USeries operator*(const USeries& a, const USeries& b) {
    USeries r(std::min(a.trunc_, b.trunc_));
    for (auto& [p, c] : a.coeffs_) {
        for (auto& [p2, c2] : b.coeffs_) {
            if (p.size() + p2.size() > r.trunc_) continue;
            std::vector<long long> parts = p.parts();
            parts.insert(parts.end(), p2.parts().begin(), p2.parts().end());
            std::sort(parts.rbegin(), parts.rend());
            Partition u(std::move(parts));
            auto it = r.coeffs_.find(u);
            if (it == r.coeffs_.end()) {
                CycQ v = c * c2;
                if (!v.is_zero()) r.coeffs_[u] = std::move(v);
            } else {
                it->second += c * c2;
                if (it->second.is_zero()) r.coeffs_.erase(it);
            }
        }
    }
    return r;
}

USeries USeries::operator*(const CycQ& c) const {
    USeries r(trunc_);
    if (c.is_zero()) return r;
    for (auto& [p, v] : coeffs_) r.coeffs_[p] = v * c;
    return r;
}

USeries USeries::inverse() const {
    CycQ c0 = coeff(Partition{});
    if (c0.is_zero()) throw NotAUnit("u-series with no constant term");
    CycQ c0i = c0.inverse();
    // f = c0 (1 + g), size-graded g; 1/f = c0^-1 sum (-g)^k, k <= trunc
    USeries g(trunc_);
    for (auto& [p, c] : coeffs_)
        if (p.size() > 0) g.coeffs_[p] = c * c0i;
    USeries acc(trunc_);
    acc.set(Partition{}, CycQ::one());
    USeries pw = acc;
    for (long long k = 1; k <= trunc_; ++k) {
        pw = pw * g;
        if (pw.coeffs_.empty()) break;
        acc = acc + pw * CycQ(Rat(k % 2 == 1 ? -1 : 1));
    }
    return acc * c0i;
}

QSeries USeries::specialize_q() const {
    QSeries s(Rat(trunc_ + 1));
    for (auto& [p, c] : coeffs_) s.add_to(Rat(p.size()), c);
    return s;
}

USeries useries_all(long long n) {
    USeries r(n);
    enumerate_partitions(n, [&](const Partition& p) { r.set(p, CycQ::one()); });
    return r;
}

USeries useries_all_inverse(long long n) {
    // prod_m (1 - u_m): signed indicator of partitions into distinct parts
    USeries r(n);
    enumerate_partitions(n, [&](const Partition& p) {
        auto& parts = p.parts();
        for (size_t i = 1; i < parts.size(); ++i)
            if (parts[i] == parts[i - 1]) return;
        r.set(p, CycQ(Rat(parts.size() % 2 == 0 ? 1 : -1)));
    });
    return r;
}

USeries ubracket(const PartitionFunction& f, long long n) {
    if (n < 0) throw BadParam("ubracket requires n >= 0");
    USeries numer(n);
    enumerate_partitions(n, [&](const Partition& p) { numer.set(p, f(p)); });
    return numer * useries_all_inverse(n);
}

PartitionFunction odot(const PartitionFunction& f, const PartitionFunction& g, long long n) {
    USeries prod = ubracket(f, n) * ubracket(g, n);
    USeries values = prod * useries_all(n);
    auto memo = std::make_shared<std::map<Partition, CycQ>>(values.coeffs());
    long long bound = n;
    return PartitionFunction(
        "(" + f.name() + " (.) " + g.name() + ")", f.weight() + g.weight(), std::lcm(f.level(), g.level()),
        [memo, bound](const Partition& p) {
            if (p.size() > bound)
                throw TruncExceeded("induced product evaluated beyond its size truncation " +
                                    std::to_string(bound));
            auto it = memo->find(p);
            return it == memo->end() ? CycQ::zero() : it->second;
        });
}

} // namespace qb
