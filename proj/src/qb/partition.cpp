#include "partition.hpp"

#include "errors.hpp"
#include "qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qb {

Partition::Partition(std::vector<long long> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw BadParam("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw BadParam("partition parts must be weakly decreasing");
        size_ += parts_[i];
    }
}

long long Partition::multiplicity(long long m) const {
    long long c = 0;
    for (auto p : parts_)
        if (p == m) ++c;
    return c;
}

std::vector<std::pair<long long, long long>> Partition::multiplicities() const {
    std::vector<std::pair<long long, long long>> out;
    for (size_t i = 0; i < parts_.size();) {
        size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        out.emplace_back(parts_[i], (long long)(j - i));
        i = j;
    }
    return out;
}

const std::vector<long long>& Partition::hooks() const {
    if (!hooks_.empty() || size_ == 0) return hooks_;
    long long cols = parts_.empty() ? 0 : parts_[0];
    std::vector<long long> conj(cols, 0);
    for (long long j = 0; j < cols; ++j)
        for (size_t i = 0; i < parts_.size(); ++i)
            if (parts_[i] > j) conj[j]++;
    for (size_t i = 0; i < parts_.size(); ++i)
        for (long long j = 0; j < parts_[i]; ++j)
            hooks_.push_back(parts_[i] - j + conj[j] - (long long)i - 1);
    return hooks_;
}

bool Partition::operator<(const Partition& o) const {
    if (size_ != o.size_) return size_ < o.size_;
    return parts_ > o.parts_; // within a grade: descending lexicographic first
}

std::string Partition::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

void enumerate_partitions(long long n_max, const std::function<void(const Partition&)>& visit) {
    if (n_max < 0) throw BadParam("enumerate_partitions requires n_max >= 0");
    visit(Partition{});
    for (long long n = 1; n <= n_max; ++n) {
        // descending lexicographic: start at (n), end at (1,...,1)
        std::vector<long long> a{n};
        while (true) {
            visit(Partition(a));
            // find rightmost part > 1
            long long k = (long long)a.size() - 1;
            while (k >= 0 && a[k] == 1) --k;
            if (k < 0) break;
            long long rem = 0;
            while ((long long)a.size() > k + 1) {
                rem += a.back();
                a.pop_back();
            }
            a[k] -= 1;
            rem += 1;
            // refill greedily with parts <= a[k]
            while (rem > 0) {
                long long part = std::min(rem, a[k]);
                a.push_back(part);
                rem -= part;
            }
        }
    }
}

std::vector<Partition> partitions_up_to(long long n_max) {
    std::vector<Partition> out;
    enumerate_partitions(n_max, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::vector<Int> partition_counts(long long n_max) {
    std::vector<Int> p(n_max + 1, Int(0));
    p[0] = 1;
    for (long long n = 1; n <= n_max; ++n) {
        Int acc = 0;
        for (long long k = 1;; ++k) {
            long long g1 = k * (3 * k - 1) / 2;
            long long g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= n) acc += sign * p[n - g1];
            if (g2 <= n) acc += sign * p[n - g2];
        }
        p[n] = acc;
    }
    return p;
}

PartitionFunction PartitionFunction::one() {
    return PartitionFunction("1", 0, 1, [](const Partition&) { return CycQ::one(); });
}

PartitionFunction PartitionFunction::operator*(const PartitionFunction& g) const {
    auto f_eval = eval_;
    auto g_eval = g.eval_;
    return PartitionFunction(name_ + "*" + g.name_, weight_ + g.weight_, std::lcm(level_, g.level_),
                             [f_eval, g_eval](const Partition& p) { return f_eval(p) * g_eval(p); });
}

// ---- generating constants -------------------------------------------------

namespace {

// exp(c*w) as a w-series to the given truncation
QSeries exp_series(const Rat& c, const Rat& trunc) {
    QSeries s(trunc);
    Rat pw(1);
    Int fact(1);
    for (long long j = 0; Rat(j) < trunc; ++j) {
        if (j > 0) {
            pw *= c;
            fact *= j;
        }
        s.set(Rat(j), CycQ(pw / Rat(fact)));
    }
    return s;
}

long long key_den(const Rat& a) { return to_ll(den(mod1(a))); }

} // namespace

CycQ beta(int k, const Rat& a) {
    if (k < 0) return CycQ::zero();
    Rat trunc(k + 2);
    QSeries numer = exp_series(make_rat(1, 2), trunc);
    QSeries den_s = exp_series(Rat(1), trunc) * CycQ::root_of_unity(a) - QSeries::constant(CycQ::one(), trunc);
    QSeries ratio = numer * den_s.inverse();
    Rat want(k - 1);
    if (want >= ratio.trunc()) throw std::logic_error("beta truncation bookkeeping");
    return ratio.coeff(want);
}

CycQ alpha_tilde(int k, const Rat& a) {
    if (k < 2) throw BadParam("alpha_tilde defined for k >= 2");
    Rat trunc(k + 2);
    // (1/2) x/(1-x)^2 with x = e(a) e^w
    QSeries x = exp_series(Rat(1), trunc) * CycQ::root_of_unity(a);
    QSeries one = QSeries::constant(CycQ::one(), trunc);
    QSeries g = x * ((one - x) * (one - x)).inverse() * make_rat(1, 2);
    return g.coeff(Rat(k - 2)) * Rat(factorial(k - 2));
}

CycQ alpha(int k, const Rat& a) {
    bool integral = (mod1(a) == 0);
    if (k >= 2) return alpha_tilde(k, a);
    CycQ ea = CycQ::root_of_unity(a);
    switch (k) {
        case -1:
            return integral ? CycQ(make_rat(1, 2)) : CycQ::zero();
        case 0:
            if (integral) return CycQ(make_rat(-1, 4));
            return (ea - CycQ::one()).inverse() * make_rat(1, 2);
        case 1:
            if (integral) return CycQ(make_rat(-1, 24));
            return (ea + CycQ::one()) * (ea - CycQ::one()).inverse() * make_rat(-1, 4);
        default:
            throw BadParam("alpha defined for k >= -1");
    }
}

// ---- families -------------------------------------------------------------

Rat seki_bernoulli(int l, long long n) {
    Rat acc(0);
    for (long long i = 1; i <= n; ++i) {
        Rat pw(1);
        for (int j = 0; j < l - 1; ++j) pw *= Rat(i);
        acc += pw;
    }
    return acc;
}

CycQ seki_bernoulli_twisted(int l, const Rat& b, long long n) {
    CycQ acc;
    for (long long i = 1; i <= n; ++i) {
        Rat pw(1);
        for (int j = 0; j < l - 1; ++j) pw *= Rat(i);
        acc += CycQ::root_of_unity(b * Rat(i)) * pw;
    }
    return acc;
}

PartitionFunction pf_Q(int k, const Rat& a) {
    if (k < 0) throw BadParam("Q_k requires k >= 0");
    Rat am = mod1(a);
    CycQ bk = beta(k, am);
    if (k == 0)
        return PartitionFunction("Q(0;" + rat_str(am) + ")", 0, key_den(am),
                                 [bk](const Partition&) { return bk; });
    Rat inv_fact = Rat(1) / Rat(factorial(k - 1));
    std::string name = am == 0 ? "Q(" + std::to_string(k) + ")"
                               : "Q(" + std::to_string(k) + ";a=" + rat_str(am) + ")";
    return PartitionFunction(name, k, key_den(am), [k, am, bk, inv_fact](const Partition& p) {
        CycQ acc = bk;
        const auto& parts = p.parts();
        for (long long i = 1; i <= (long long)parts.size(); ++i) {
            Rat s1 = Rat(parts[i - 1] - i) + make_rat(1, 2);
            Rat s0 = Rat(-i) + make_rat(1, 2);
            Rat p1(1), p0(1);
            for (int j = 0; j < k - 1; ++j) {
                p1 *= s1;
                p0 *= s0;
            }
            CycQ t = CycQ::root_of_unity(am * Rat(parts[i - 1] - i)) * p1 -
                     CycQ::root_of_unity(am * Rat(-i)) * p0;
            acc += t * inv_fact;
        }
        return acc;
    });
}

PartitionFunction pf_Q_gjt(int k, long long m) {
    if (k < 1 || m < 1) throw BadParam("Q_k^(m) requires k, m >= 1");
    std::vector<PartitionFunction> shifted;
    std::vector<CycQ> roots;
    for (long long a = 0; a < m; ++a) {
        shifted.push_back(pf_Q(k, Rat(2 * a, m)));
        roots.push_back(CycQ::root_of_unity(Rat(a, m)));
    }
    PartitionFunction base = pf_Q(k);
    Rat inv_m = Rat(1, m);
    return PartitionFunction("Qgjt(" + std::to_string(k) + ";" + std::to_string(m) + ")", k, m,
                             [base, shifted, roots, inv_m](const Partition& p) {
                                 CycQ acc = base(p);
                                 CycQ corr;
                                 for (size_t i = 0; i < shifted.size(); ++i) corr += roots[i] * shifted[i](p);
                                 return acc - corr * inv_m;
                             });
}

PartitionFunction pf_H(int k, const Rat& a) {
    if (k < 2) throw BadParam("H_k requires k >= 2");
    Rat am = mod1(a);
    if (am == 0) {
        Rat c = -bernoulli(k) / Rat(2 * k);
        return PartitionFunction("H(" + std::to_string(k) + ")", k, 1, [k, c](const Partition& p) {
            Rat acc = c;
            for (auto h : p.hooks()) {
                Rat pw(1);
                for (int j = 0; j < k - 2; ++j) pw *= Rat(h);
                acc += pw;
            }
            return CycQ(acc);
        });
    }
    CycQ c = alpha_tilde(k, am);
    int sign = (k % 2 == 0) ? 1 : -1;
    return PartitionFunction("H(" + std::to_string(k) + ";a=" + rat_str(am) + ")", k, key_den(am),
                             [k, am, c, sign](const Partition& p) {
                                 CycQ acc = c;
                                 for (auto h : p.hooks()) {
                                     Rat pw(1);
                                     for (int j = 0; j < k - 2; ++j) pw *= Rat(h);
                                     CycQ t = CycQ::root_of_unity(am * Rat(h)) +
                                              CycQ::root_of_unity(-am * Rat(h)) * Rat(sign);
                                     acc += t * (pw / 2);
                                 }
                                 return acc;
                             });
}

PartitionFunction pf_H_t(int k, long long t) {
    if (k < 2 || t < 1) throw BadParam("H_k^t requires k >= 2, t >= 1");
    Rat c = -bernoulli(k) / Rat(2 * k);
    Rat tk(1);
    for (int j = 0; j < k - 1; ++j) tk *= Rat(t);
    c *= tk;
    return PartitionFunction("Ht(" + std::to_string(k) + ";t=" + std::to_string(t) + ")", k, t,
                             [k, t, c](const Partition& p) {
                                 Rat acc = c;
                                 for (auto h : p.hooks()) {
                                     if (h % t != 0) continue;
                                     Rat pw(1);
                                     for (int j = 0; j < k - 2; ++j) pw *= Rat(h);
                                     acc += pw;
                                 }
                                 return CycQ(acc);
                             });
}

PartitionFunction pf_S(int k, const Rat& a) {
    if (k < 1) throw BadParam("S_k requires k >= 1");
    Rat am = mod1(a);
    if (am == 0) {
        Rat c = -bernoulli(k) / Rat(2 * k);
        return PartitionFunction("S(" + std::to_string(k) + ")", k, 1, [k, c](const Partition& p) {
            Rat acc = c;
            for (auto part : p.parts()) {
                Rat pw(1);
                for (int j = 0; j < k - 1; ++j) pw *= Rat(part);
                acc += pw;
            }
            return CycQ(acc);
        });
    }
    CycQ c = alpha(k, am);
    int sign = (k % 2 == 0) ? 1 : -1;
    return PartitionFunction("S(" + std::to_string(k) + ";a=" + rat_str(am) + ")", k, key_den(am),
                             [k, am, c, sign](const Partition& p) {
                                 CycQ acc = c;
                                 for (auto part : p.parts()) {
                                     Rat pw(1);
                                     for (int j = 0; j < k - 1; ++j) pw *= Rat(part);
                                     CycQ t = CycQ::root_of_unity(am * Rat(part)) +
                                              CycQ::root_of_unity(-am * Rat(part)) * Rat(sign);
                                     acc += t * (pw / 2);
                                 }
                                 return acc;
                             });
}

PartitionFunction pf_S_t(int k, long long t) {
    if (k < 1 || t < 1) throw BadParam("S_k^t requires k >= 1, t >= 1");
    Rat c = -bernoulli(k) / Rat(2 * k);
    Rat tk(1);
    for (int j = 0; j < k - 1; ++j) tk *= Rat(t);
    c *= tk;
    return PartitionFunction("St(" + std::to_string(k) + ";t=" + std::to_string(t) + ")", k, t,
                             [k, t, c](const Partition& p) {
                                 Rat acc = c;
                                 for (auto part : p.parts()) {
                                     if (part % t != 0) continue;
                                     Rat pw(1);
                                     for (int j = 0; j < k - 1; ++j) pw *= Rat(part);
                                     acc += pw;
                                 }
                                 return CycQ(acc);
                             });
}

PartitionFunction pf_T_unshifted(int k, int l) {
    if (k < 0 || l < 1) throw BadParam("T_{k,l} requires k >= 0, l >= 1");
    Rat c(0);
    if (k == 0 || l == 1) c = -bernoulli(k + l) / Rat(2 * (k + l));
    return PartitionFunction("T(" + std::to_string(k) + "," + std::to_string(l) + ")", k + l, 1,
                             [k, l, c](const Partition& p) {
                                 Rat acc = c;
                                 for (auto [m, r] : p.multiplicities()) {
                                     Rat pw(1);
                                     for (int j = 0; j < k; ++j) pw *= Rat(m);
                                     acc += pw * seki_bernoulli(l, r);
                                 }
                                 return CycQ(acc);
                             });
}

PartitionFunction pf_T(int k, int l, const Rat& a, const Rat& b) {
    if (k < 0 || l < 1) throw BadParam("T_{k,l} requires k >= 0, l >= 1");
    Rat am = mod1(a), bm = mod1(b);
    CycQ c;
    if (l == 1)
        c = alpha(k, am);
    else if (k == 0)
        c = alpha(l - 1, bm);
    int sign = ((k + l) % 2 == 0) ? 1 : -1;
    return PartitionFunction("T(" + std::to_string(k) + "," + std::to_string(l) + ";a=" + rat_str(am) +
                                 ",b=" + rat_str(bm) + ")",
                             k + l, lcm_ll(key_den(am), key_den(bm)),
                             [k, l, am, bm, c, sign](const Partition& p) {
                                 CycQ acc = c;
                                 for (auto [m, r] : p.multiplicities()) {
                                     Rat pw(1);
                                     for (int j = 0; j < k; ++j) pw *= Rat(m);
                                     CycQ t = CycQ::root_of_unity(am * Rat(m)) * seki_bernoulli_twisted(l, bm, r) +
                                              CycQ::root_of_unity(-am * Rat(m)) *
                                                  seki_bernoulli_twisted(l, -bm, r) * Rat(sign);
                                     acc += t * pw;
                                 }
                                 return acc;
                             });
}

PartitionFunction pf_T_st(int k, int l, long long s, long long t) {
    if (k < 1 || l < 1 || s < 1 || t < 1) throw BadParam("T_{k,l}^{s,t} requires positive parameters");
    Rat c(0);
    if (k == 0 || l == 1) c = -bernoulli(k + l) / Rat(2 * (k + l));
    return PartitionFunction("Tst(" + std::to_string(k) + "," + std::to_string(l) + ";s=" + std::to_string(s) +
                                 ",t=" + std::to_string(t) + ")",
                             k + l, s * t,
                             [k, l, s, t, c](const Partition& p) {
                                 Rat acc = c;
                                 for (auto [part, r] : p.multiplicities()) {
                                     if (part % s != 0) continue;
                                     long long m = part / s;
                                     Rat pw(1);
                                     for (int j = 0; j < k; ++j) pw *= Rat(m);
                                     acc += pw * seki_bernoulli(l, r / t);
                                 }
                                 return CycQ(acc);
                             });
}

} // namespace qb
