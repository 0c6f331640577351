#include "qseries.hpp"

#include <sstream>

namespace qb {

QSeries QSeries::constant(const CycQ& c, const Rat& trunc) {
    QSeries s(trunc);
    if (!c.is_zero() && trunc > 0) s.terms_[Rat(0)] = c;
    return s;
}

QSeries QSeries::monomial(const Rat& exp, const CycQ& c, const Rat& trunc) {
    QSeries s(trunc);
    if (!c.is_zero() && exp < trunc) s.terms_[exp] = c;
    return s;
}

Rat QSeries::floor_exp() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

long long QSeries::denom() const {
    long long d = 1;
    for (auto& [e, c] : terms_) d = std::lcm(d, to_ll(den(e)));
    return d;
}

void QSeries::set(const Rat& e, CycQ c) {
    if (e >= trunc_) return;
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = std::move(c);
}

void QSeries::add_to(const Rat& e, const CycQ& c) {
    if (e >= trunc_ || c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CycQ QSeries::coeff(const Rat& e) const {
    if (e >= trunc_)
        throw TruncationUnderflow("coefficient of q^" + rat_str(e) + " beyond trunc " + rat_str(trunc_));
    auto it = terms_.find(e);
    return it == terms_.end() ? CycQ::zero() : it->second;
}

void QSeries::drop_beyond_trunc() {
    auto it = terms_.lower_bound(trunc_);
    terms_.erase(it, terms_.end());
}

QSeries QSeries::operator-() const {
    QSeries r(trunc_);
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc_, b.trunc_));
    r.terms_ = a.terms_;
    for (auto& [e, c] : b.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end())
            r.terms_[e] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    r.drop_beyond_trunc();
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    // valid order: min over cross terms of one floor plus the other trunc
    Rat t = std::min(a.trunc_ + b.floor_exp(), b.trunc_ + a.floor_exp());
    QSeries r(t);
    for (auto& [e1, c1] : a.terms_) {
        if (e1 + b.floor_exp() >= t) break;
        for (auto& [e2, c2] : b.terms_) {
            Rat e = e1 + e2;
            if (e >= t) break;
            r.add_to(e, c1 * c2);
        }
    }
    return r;
}

QSeries QSeries::operator*(const CycQ& c) const {
    QSeries r(trunc_);
    if (c.is_zero()) return r;
    for (auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

QSeries QSeries::operator*(const Rat& c) const { return *this * CycQ(c); }

QSeries QSeries::inverse() const {
    if (terms_.empty()) throw NotAUnit("inverting a series that vanishes up to its truncation");
    Rat v = floor_exp();
    CycQ lead = terms_.begin()->second;
    CycQ lead_inv = lead.inverse();
    // f = q^v * lead * (1 + g), val(g) > 0; 1/f = q^-v lead^-1 sum (-g)^k
    Rat window = trunc_ - v; // relative precision available
    QSeries g(window);
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        g.set(it->first - v, it->second * lead_inv);
    QSeries acc = QSeries::constant(CycQ::one(), window);
    QSeries pw = QSeries::constant(CycQ::one(), window);
    // val(g) >= 1/denom, so only finitely many powers land below the window
    while (true) {
        pw = (pw * (-g)).truncated(window);
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    QSeries r(window - v);
    for (auto& [e, c] : acc.terms()) r.set(e - v, c * lead_inv);
    return r;
}

QSeries QSeries::scale_exponents(long long N) const {
    if (N <= 0) throw BadParam("scale_exponents requires N >= 1");
    QSeries r(trunc_ / Rat(N));
    for (auto& [e, c] : terms_) r.terms_[e / Rat(N)] = c;
    return r;
}

QSeries QSeries::dilate(long long N) const {
    if (N <= 0) throw BadParam("dilate requires N >= 1");
    QSeries r(trunc_ * Rat(N));
    for (auto& [e, c] : terms_) r.terms_[e * Rat(N)] = c;
    return r;
}

QSeries QSeries::derivative_qdq() const {
    QSeries r(trunc_);
    for (auto& [e, c] : terms_) {
        if (e == 0) continue;
        r.terms_[e] = c * e;
    }
    return r;
}

QSeries QSeries::truncated(const Rat& new_trunc) const {
    if (new_trunc > trunc_)
        throw TruncationUnderflow("cannot extend trunc from " + rat_str(trunc_) + " to " + rat_str(new_trunc));
    QSeries r(new_trunc);
    for (auto& [e, c] : terms_) {
        if (e >= new_trunc) break;
        r.terms_[e] = c;
    }
    return r;
}

QSeries QSeries::shifted(const Rat& s) const {
    QSeries r(trunc_ + s);
    for (auto& [e, c] : terms_) r.terms_[e + s] = c;
    return r;
}

bool QSeries::equal_up_to(const QSeries& o, const Rat& order) const {
    if (order > trunc_ || order > o.trunc_)
        throw TruncationUnderflow("comparison to order " + rat_str(order) + " exceeds a truncation");
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end() && a->first < order && b->first < order) {
        if (a->first != b->first || a->second != b->second) return false;
        ++a;
        ++b;
    }
    if (a != terms_.end() && a->first < order) return false;
    if (b != o.terms_.end() && b->first < order) return false;
    return true;
}

bool QSeries::operator==(const QSeries& o) const { return trunc_ == o.trunc_ && terms_ == o.terms_; }

std::string QSeries::str(int max_terms) const {
    std::ostringstream os;
    int n = 0;
    for (auto& [e, c] : terms_) {
        if (n++ >= max_terms) {
            os << " + ...";
            break;
        }
        if (n > 1) os << " + ";
        os << "(" << c.reduced().str() << ")q^" << rat_str(e);
    }
    if (terms_.empty()) os << "0";
    os << " [O(q^" << rat_str(trunc_) << ")]";
    return os.str();
}

} // namespace qb
