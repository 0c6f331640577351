#include "formal.hpp"

#include "errors.hpp"

#include <functional>
#include <sstream>

namespace qb {

FormalPoly FormalPoly::constant(const CycQ& c) {
    FormalPoly p;
    if (!c.is_zero()) p.terms_[Monomial{}] = c;
    return p;
}

FormalPoly FormalPoly::symbol(int k, const Rat& a, const Rat& exponent) {
    if (k < 1) throw BadParam("symbols have k >= 1");
    FormalPoly p;
    if (exponent == 0) return constant(CycQ::one());
    Monomial m;
    m[Gen{k, mod1(a)}] = exponent;
    p.terms_[m] = CycQ::one();
    return p;
}

void FormalPoly::add_term(const Monomial& m, const CycQ& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end())
        terms_[m] = c;
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormalPoly& FormalPoly::operator+=(const FormalPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

FormalPoly operator*(const FormalPoly& a, const FormalPoly& b) {
    FormalPoly r;
    for (auto& [m1, c1] : a.terms_)
        for (auto& [m2, c2] : b.terms_) {
            FormalPoly::Monomial m = m1;
            for (auto& [g, e] : m2) {
                m[g] += e;
                if (m[g] == 0) m.erase(g);
            }
            r.add_term(m, c1 * c2);
        }
    return r;
}

FormalPoly FormalPoly::operator*(const CycQ& c) const {
    FormalPoly r;
    if (c.is_zero()) return r;
    for (auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

bool FormalPoly::is_homogeneous(Rat* weight) const {
    bool first = true;
    Rat w(0);
    for (auto& [m, c] : terms_) {
        Rat mw(0);
        for (auto& [g, e] : m) mw += Rat(g.k) * e;
        if (first) {
            w = mw;
            first = false;
        } else if (mw != w)
            return false;
    }
    if (weight) *weight = w;
    return true;
}

Rat FormalPoly::weight() const {
    Rat w(0);
    if (!is_homogeneous(&w)) throw NotHomogeneous("mixed-weight formal polynomial");
    return w;
}

FormalPoly FormalPoly::partial(const Gen& g) const {
    FormalPoly r;
    for (auto& [m, c] : terms_) {
        auto it = m.find(g);
        if (it == m.end()) continue;
        Rat e = it->second;
        Monomial n = m;
        if (e == 1)
            n.erase(g);
        else
            n[g] = e - 1;
        r.add_term(n, c * e);
    }
    return r;
}

FormalPoly FormalPoly::dropped_weight1() const {
    FormalPoly r;
    for (auto& [m, c] : terms_) {
        bool has1 = false;
        for (auto& [g, e] : m)
            if (g.k == 1 && e > 0) has1 = true;
        if (!has1) r.add_term(m, c);
    }
    return r;
}

FormalPoly FormalPoly::divided_by_q2() const {
    FormalPoly r;
    Gen q2{2, Rat(0)};
    for (auto& [m, c] : terms_) {
        auto it = m.find(q2);
        if (it == m.end() || it->second < 1) throw BadParam("polynomial not divisible by Q_2");
        Monomial n = m;
        if (it->second == 1)
            n.erase(q2);
        else
            n[q2] = it->second - 1;
        r.add_term(n, c);
    }
    return r;
}

PartitionFunction FormalPoly::to_partition_function() const {
    // capture evaluators per symbol
    std::vector<std::pair<std::vector<std::pair<PartitionFunction, long long>>, CycQ>> monos;
    Rat w(0);
    is_homogeneous(&w);
    for (auto& [m, c] : terms_) {
        std::vector<std::pair<PartitionFunction, long long>> fac;
        for (auto& [g, e] : m) {
            if (!is_integer(e) || e < 0) throw BadParam("evaluation needs nonnegative integer exponents");
            fac.push_back({pf_Q(g.k, g.a), to_ll(num(e))});
        }
        monos.push_back({std::move(fac), c});
    }
    int iw = is_integer(w) ? (int)to_ll(num(w)) : 0;
    return PartitionFunction("formal", iw, 1, [monos](const Partition& p) {
        CycQ acc;
        for (auto& [fac, c] : monos) {
            CycQ t = c;
            for (auto& [f, e] : fac) {
                CycQ v = f(p);
                for (long long i = 0; i < e; ++i) t *= v;
            }
            acc += t;
        }
        return acc;
    });
}

std::string FormalPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.reduced().str() << ")";
        for (auto& [g, e] : m) {
            os << "*Q" << g.k;
            if (g.a != 0) os << "(" << rat_str(g.a) << ")";
            if (e != 1) os << "^" << rat_str(e);
        }
    }
    return os.str();
}

FormalPoly op_D(int j, const FormalPoly& f) {
    if (j < 0) throw BadParam("operator order must be nonnegative");
    if (j == 0) return f;
    FormalPoly out;
    for (auto& [m, c] : f.terms()) {
        std::vector<FormalPoly::Gen> keys;
        for (auto& [g, e] : m) keys.push_back(g);
        // ordered j-tuples of symbols occurring in the monomial
        std::vector<int> pick(j, 0);
        std::function<void(int, FormalPoly, int, Rat)> rec = [&](int pos, FormalPoly cur, int isum,
                                                                  Rat asum_unused) {
            (void)asum_unused;
            if (cur.is_zero()) return;
            if (pos == j) {
                // multinomial(|i|; i_1..i_j) with i_t = k_t - 1
                std::vector<int> iv;
                Rat asum(0);
                for (int t = 0; t < j; ++t) {
                    iv.push_back(keys[pick[t]].k - 1);
                    asum += keys[pick[t]].a;
                }
                Int multi = factorial(isum);
                for (int v : iv) multi /= factorial(v);
                // Q_{|i|}(|a|): fold the constant when |i| = 0
                if (isum == 0) {
                    CycQ q0 = beta(0, asum);
                    out += cur * (q0 * Rat(multi));
                } else {
                    out += cur * FormalPoly::symbol(isum, asum) * CycQ(Rat(multi));
                }
                return;
            }
            for (size_t t = 0; t < keys.size(); ++t) {
                pick[pos] = (int)t;
                rec(pos + 1, cur.partial(keys[t]), isum + keys[t].k - 1, Rat(0));
            }
        };
        FormalPoly seed;
        seed.add_term(m, c);
        rec(0, seed, 0, Rat(0));
    }
    return out;
}

FormalPoly pi_bo(const FormalPoly& f) {
    if (f.is_zero()) return f;
    Rat l;
    if (!f.is_homogeneous(&l)) throw NotHomogeneous("projection needs homogeneous input");
    FormalPoly q2 = FormalPoly::symbol(2);
    FormalPoly out;
    FormalPoly q2pow = FormalPoly::constant(CycQ::one());
    for (int r = 0;; ++r) {
        bool any = false;
        Rat poch = pochhammer(l - Rat(r) - make_rat(3, 2), r);
        if (poch == 0) throw PochhammerZero("half-integer Pochhammer vanished unexpectedly");
        for (int s = 0; s <= r; ++s) {
            FormalPoly t = f;
            for (int u = 0; u < s; ++u) t = op_D(2, t);
            for (int u = 0; u < 2 * r - 2 * s; ++u) t = op_D(1, t);
            if (t.is_zero()) continue;
            any = true;
            Rat denom = poch * Rat(factorial(r - s)) * Rat(factorial(s));
            for (int u = 0; u < r; ++u) denom *= 2;
            CycQ coef(Rat(s % 2 == 0 ? 1 : -1) / denom);
            out += q2pow * t * coef;
        }
        if (!any && r > 0) break;
        if (r > 40) break; // weight-bounded in practice
        q2pow = q2pow * q2;
    }
    return out;
}

FormalPoly h_poly(int k) {
    if (k < 0) throw BadParam("h_k requires k >= 0");
    FormalPoly out;
    for (int r = 0; 2 * r <= k; ++r) {
        int rem = k - 2 * r;
        Rat denom = pochhammer(Rat(k - r) - make_rat(3, 2), r) * Rat(factorial(r));
        for (int u = 0; u < r; ++u) denom *= 2;
        FormalPoly term = FormalPoly::constant(CycQ(Rat(1) / denom));
        for (int u = 0; u < r; ++u) term = term * FormalPoly::symbol(2);
        if (rem >= 1) term = term * FormalPoly::symbol(rem);
        // rem == 0 contributes Q_0 = 1
        out += term;
    }
    return out;
}

FormalPoly op_Delta(int n, const FormalPoly& f) {
    FormalPoly out;
    for (int i = 0; i <= n; ++i) {
        FormalPoly t = op_D(n - i, f);
        for (int u = 0; u < i; ++u) t = op_D(1, t);
        CycQ c(Rat(binomial(n, i)) * Rat(i % 2 == 0 ? 1 : -1));
        out += t * c;
    }
    return out;
}

FormalPoly vee_apply(const FormalPoly& f, const FormalPoly& arg) {
    FormalPoly out;
    for (auto& [m, c] : f.terms()) {
        FormalPoly cur = arg;
        for (auto& [g, e] : m) {
            if (g.a != 0 || !is_integer(e) || e < 0)
                throw BadParam("the substitution homomorphism is level-1 with integer exponents");
            for (long long u = 0; u < to_ll(num(e)); ++u) cur = op_Delta(g.k, cur);
        }
        out += cur * c;
    }
    return out;
}

FormalPoly pi_closed_form(const FormalPoly& f) {
    Rat l = f.weight();
    if (!is_integer(l) || l < 0) throw BadParam("closed projection form needs integer weight");
    int li = (int)to_ll(num(l));
    FormalPoly arg = FormalPoly::symbol(2, Rat(0), make_rat(3, 2));
    // normalize per monomial: the factorial constant is the product over the factors
    // (a plain weight-factorial fails already on two-factor monomials)
    FormalPoly pre = FormalPoly::symbol(2, Rat(0), l - make_rat(3, 2));
    Rat poch = falling_factorial(make_rat(3, 2), li);
    FormalPoly out;
    for (auto& [m, c] : f.terms()) {
        FormalPoly mono;
        mono.add_term(m, c);
        Rat denom = poch;
        for (auto& [g, e] : m) {
            if (!is_integer(e) || e < 0) throw BadParam("substitution needs integer exponents");
            for (long long u = 0; u < to_ll(num(e)); ++u) denom *= Rat(factorial(g.k));
        }
        out += pre * vee_apply(mono, arg) * CycQ(Rat(1) / denom);
    }
    return out;
}

} // namespace qb
