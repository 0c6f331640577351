#include "tpoly.hpp"

#include "errors.hpp"

#include <sstream>

namespace qb {

TPoly TPoly::constant(const Rat& r) {
    TPoly p;
    if (r != 0) p.terms_[Mono{}] = r;
    return p;
}

TPoly TPoly::generator(int k, int l) {
    if (k < 0 || l < 1) throw BadParam("T symbols require k >= 0, l >= 1");
    TPoly p;
    Mono m;
    m[{k, l}] = 1;
    p.terms_[m] = Rat(1);
    return p;
}

void TPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end())
        terms_[m] = c;
    else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TPoly& TPoly::operator+=(const TPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

TPoly TPoly::operator*(const Rat& r) const {
    TPoly p;
    if (r == 0) return p;
    for (auto& [m, c] : terms_) p.terms_[m] = c * r;
    return p;
}

TPoly TPoly::odot(const TPoly& o) const {
    TPoly r;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) {
            Mono m = m1;
            for (auto& [g, e] : m2) m[g] += e;
            r.add_term(m, c1 * c2);
        }
    return r;
}

int TPoly::weight() const {
    bool first = true;
    int w = 0;
    for (auto& [m, c] : terms_) {
        int mw = 0;
        for (auto& [g, e] : m) mw += (g.first + g.second) * e;
        if (first) {
            w = mw;
            first = false;
        } else if (mw != w)
            throw NotHomogeneous("mixed-weight induced-product polynomial");
    }
    return w;
}

TPoly TPoly::delta() const {
    TPoly out;
    for (auto& [m, c] : terms_) {
        for (auto& [g, e] : m) {
            auto [k, l] = g;
            Mono rest = m;
            if (e == 1)
                rest.erase(g);
            else
                rest[g] = e - 1;
            if (k >= 1 && l >= 2) {
                Mono n = rest;
                n[{k - 1, l - 1}] += 1;
                out.add_term(n, c * Rat(e) * Rat(k) * Rat(l - 1));
            } else if (k + l == 2) {
                out.add_term(rest, c * Rat(e) * make_rat(-1, 2));
            }
        }
    }
    return out;
}

TPoly TPoly::pi() const {
    TPoly out;
    TPoly t11pow = TPoly::constant(Rat(1));
    TPoly cur = *this;
    Rat fact(1);
    Rat two_r(1);
    for (int r = 0;; ++r) {
        if (r > 0) {
            fact *= Rat(r);
            two_r *= 2;
            t11pow = t11pow.odot(TPoly::generator(1, 1));
            cur = cur.delta();
        }
        if (cur.is_zero()) break;
        out += t11pow.odot(cur) * (two_r / fact);
    }
    return out;
}

QSeries TPoly::bracket(long long T) const {
    std::map<std::pair<int, int>, QSeries> cache;
    QSeries out(Rat(T + 1));
    for (auto& [m, c] : terms_) {
        QSeries t = QSeries::constant(CycQ(c), Rat(T + 1));
        for (auto& [g, e] : m) {
            auto it = cache.find(g);
            if (it == cache.end())
                it = cache.emplace(g, qbracket(pf_T_unshifted(g.first, g.second), T)).first;
            for (int u = 0; u < e; ++u) t = t * it->second;
        }
        out = out + t;
    }
    return out;
}

PartitionFunction TPoly::to_partition_function(long long n) const {
    std::vector<std::pair<PartitionFunction, CycQ>> monos;
    for (auto& [m, c] : terms_) {
        PartitionFunction f = PartitionFunction::one();
        for (auto& [g, e] : m)
            for (int u = 0; u < e; ++u) f = qb::odot(f, pf_T_unshifted(g.first, g.second), n);
        monos.push_back({f, CycQ(c)});
    }
    return PartitionFunction("tpoly", 0, 1, [monos](const Partition& p) {
        CycQ acc;
        for (auto& [f, c] : monos) acc += f(p) * c;
        return acc;
    });
}

std::string TPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (auto& [g, e] : m) {
            os << "*T(" << g.first << "," << g.second << ")";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace qb
