#include "jets.hpp"

#include "errors.hpp"

#include <algorithm>
#include <sstream>

namespace qb {

Rat bilinear(const RatMat& M, const std::vector<Rat>& x, const std::vector<Rat>& y) {
    if (M.empty()) return Rat(0);
    Rat acc(0);
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < M.size(); ++j) acc += x[i] * M[i][j] * y[j];
    return acc;
}

LatticeShift LatticeShift::operator+(const LatticeShift& o) const {
    LatticeShift r = *this;
    for (int i = 0; i < rank(); ++i) {
        r.lambda[i] += o.lambda[i];
        r.mu[i] += o.mu[i];
    }
    return r;
}

LatticeShift LatticeShift::operator-() const {
    LatticeShift r = *this;
    for (int i = 0; i < rank(); ++i) {
        r.lambda[i] = -r.lambda[i];
        r.mu[i] = -r.mu[i];
    }
    return r;
}

bool LatticeShift::is_integral() const {
    for (int i = 0; i < rank(); ++i)
        if (!is_integer(lambda[i]) || !is_integer(mu[i])) return false;
    return true;
}

LatticeShift LatticeShift::acted(long long a, long long b, long long c, long long d) const {
    LatticeShift r = *this;
    for (int i = 0; i < rank(); ++i) {
        r.lambda[i] = lambda[i] * Rat(a) + mu[i] * Rat(c);
        r.mu[i] = lambda[i] * Rat(b) + mu[i] * Rat(d);
    }
    return r;
}

CycQ rho_factor(const RatMat& M, const LatticeShift& X) {
    Rat arg = bilinear(M, X.lambda, X.lambda) - bilinear(M, X.lambda, X.mu) + bilinear(M, X.mu, X.mu);
    return CycQ::root_of_unity(arg);
}

CycQ zeta_factor(const RatMat& M, const LatticeShift& X, const LatticeShift& Xp) {
    Rat arg = bilinear(M, Xp.lambda, X.mu) - bilinear(M, X.lambda, Xp.mu);
    return CycQ::root_of_unity(arg);
}

bool gamma_X_member(const RatMat& M, const LatticeShift& X, long long a, long long b, long long c,
                    long long d) {
    if (a * d - b * c != 1) throw NotUnimodular("gamma must have determinant 1");
    LatticeShift Xg = X.acted(a, b, c, d);
    LatticeShift diff = Xg + (-X);
    if (!diff.is_integral()) return false;
    // rho at a negated translate is the reciprocal
    return rho_factor(M, diff).inverse() == zeta_factor(M, X, diff);
}

// ---- JetForm ---------------------------------------------------------------

JetForm::JetForm(int rank, IVec lo, IVec hi, Rat q_trunc)
    : rank_(rank), lo_(std::move(lo)), hi_(std::move(hi)), q_trunc_(std::move(q_trunc)) {
    if ((int)lo_.size() != rank_ || (int)hi_.size() != rank_) throw BadParam("jet window rank mismatch");
}

JetForm JetForm::constant(int rank, const QSeries& c, const IVec& lo, const IVec& hi) {
    JetForm j(rank, lo, hi, c.trunc());
    if (!c.is_zero()) j.coeffs_[IVec(rank, 0)] = c;
    return j;
}

QSeries JetForm::coeff(const IVec& l) const {
    for (int i = 0; i < rank_; ++i)
        if (l[i] < lo_[i] || l[i] > hi_[i])
            throw JetOrderExceeded("jet coefficient outside the exact window");
    auto it = coeffs_.find(l);
    return it == coeffs_.end() ? QSeries::zero(q_trunc_) : it->second;
}

void JetForm::set(const IVec& l, QSeries s) {
    for (int i = 0; i < rank_; ++i)
        if (l[i] < lo_[i] || l[i] > hi_[i]) return;
    QSeries t = s.trunc() > q_trunc_ ? s.truncated(q_trunc_) : std::move(s);
    if (t.is_zero())
        coeffs_.erase(l);
    else
        coeffs_[l] = std::move(t);
}

void JetForm::add_to(const IVec& l, const QSeries& s) {
    for (int i = 0; i < rank_; ++i)
        if (l[i] < lo_[i] || l[i] > hi_[i]) return;
    auto it = coeffs_.find(l);
    if (it == coeffs_.end()) {
        set(l, s);
        return;
    }
    QSeries t = it->second + s;
    if (t.trunc() > q_trunc_) t = t.truncated(q_trunc_);
    if (t.is_zero())
        coeffs_.erase(it);
    else
        it->second = std::move(t);
}

JetForm JetForm::operator-() const {
    JetForm r = *this;
    for (auto& [l, c] : r.coeffs_) c = -c;
    return r;
}

JetForm operator+(const JetForm& a, const JetForm& b) {
    if (a.rank_ != b.rank_) throw BadParam("jet rank mismatch");
    IVec lo(a.rank_), hi(a.rank_);
    for (int i = 0; i < a.rank_; ++i) {
        lo[i] = std::max(a.lo_[i], b.lo_[i]);
        hi[i] = std::min(a.hi_[i], b.hi_[i]);
    }
    JetForm r(a.rank_, lo, hi, std::min(a.q_trunc_, b.q_trunc_));
    r.weight = a.weight;
    r.index = a.index.empty() ? b.index : a.index;
    for (auto& [l, c] : a.coeffs_) r.add_to(l, c);
    for (auto& [l, c] : b.coeffs_) r.add_to(l, c);
    return r;
}

JetForm operator-(const JetForm& a, const JetForm& b) { return a + (-b); }

namespace {
Rat min_q_floor(const JetForm& j) {
    Rat f(0);
    bool first = true;
    for (auto& [l, c] : j.coeffs()) {
        Rat fe = c.floor_exp();
        if (first || fe < f) f = fe;
        first = false;
    }
    return first ? Rat(0) : std::min(f, Rat(0));
}
} // namespace

JetForm operator*(const JetForm& a, const JetForm& b) {
    if (a.rank_ != b.rank_) throw BadParam("jet rank mismatch");
    IVec lo(a.rank_), hi(a.rank_);
    for (int i = 0; i < a.rank_; ++i) {
        lo[i] = a.lo_[i] + b.lo_[i];
        hi[i] = std::min(a.hi_[i] + b.lo_[i], b.hi_[i] + a.lo_[i]);
    }
    Rat qt = std::min(a.q_trunc_ + min_q_floor(b), b.q_trunc_ + min_q_floor(a));
    JetForm r(a.rank_, lo, hi, qt);
    r.weight = a.weight + b.weight;
    if (!a.index.empty() || !b.index.empty()) {
        int n = a.rank_;
        r.index.assign(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!a.index.empty()) r.index[i][j] += a.index[i][j];
                if (!b.index.empty()) r.index[i][j] += b.index[i][j];
            }
    }
    IVec l(a.rank_);
    for (auto& [l1, c1] : a.coeffs_)
        for (auto& [l2, c2] : b.coeffs_) {
            bool ok = true;
            for (int i = 0; i < a.rank_; ++i) {
                l[i] = l1[i] + l2[i];
                if (l[i] < lo[i] || l[i] > hi[i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) r.add_to(l, c1 * c2);
        }
    return r;
}

JetForm JetForm::operator*(const QSeries& s) const {
    Rat qt = std::min(q_trunc_ + std::min(s.floor_exp(), Rat(0)), s.trunc() + min_q_floor(*this));
    JetForm r(rank_, lo_, hi_, qt);
    r.weight = weight;
    r.index = index;
    for (auto& [l, c] : coeffs_) r.set(l, c * s);
    return r;
}

JetForm JetForm::operator*(const CycQ& c) const {
    JetForm r(rank_, lo_, hi_, q_trunc_);
    r.weight = weight;
    r.index = index;
    if (c.is_zero()) return r;
    for (auto& [l, v] : coeffs_) r.coeffs_[l] = v * c;
    return r;
}

JetForm JetForm::inverse() const {
    if (rank_ != 1) throw BadParam("jet inverse implemented for rank 1");
    if (coeffs_.empty()) throw NotAUnit("inverting the zero jet");
    int v = coeffs_.begin()->first[0];
    QSeries lead = coeffs_.begin()->second;
    QSeries lead_inv = lead.inverse();
    Rat qt = std::min(q_trunc_ + std::min(lead_inv.floor_exp(), Rat(0)),
                      lead_inv.trunc() + min_q_floor(*this));
    int H = hi_[0] - v; // the unit part is exact on [0, H]
    JetForm unit(1, {0}, {H}, qt);
    for (auto& [l, c] : coeffs_) {
        int e = l[0] - v;
        if (e <= H) unit.set({e}, c * lead_inv);
    }
    // unit = 1 + g with g of positive valuation
    JetForm g = unit;
    g.set({0}, QSeries::zero(qt));
    JetForm acc = JetForm::constant(1, QSeries::constant(CycQ::one(), qt), {0}, {H});
    JetForm pw = acc;
    while (true) {
        pw = (pw * (-g)).windowed({0}, {H});
        if (pw.coeffs_.empty()) break;
        acc = acc + pw;
    }
    JetForm r(1, {-v - std::max(v, 0)}, {H - v}, acc.q_trunc_);
    r.weight = -weight;
    for (auto& [l, c] : acc.coeffs_) r.set({l[0] - v}, c * lead_inv);
    // window: coefficients of 1/f are exact for exponents <= hi - 2v
    IVec lo2{-v}, hi2{hi_[0] - 2 * v};
    return r.windowed(lo2, hi2);
}

JetForm JetForm::derivative_w(int i) const {
    IVec lo = lo_, hi = hi_;
    lo[i] -= 1;
    hi[i] -= 1;
    JetForm r(rank_, lo, hi, q_trunc_);
    r.weight = weight + 1;
    r.index = index;
    for (auto& [l, c] : coeffs_) {
        if (l[i] == 0) continue;
        IVec m = l;
        m[i] -= 1;
        r.set(m, c * Rat(l[i]));
    }
    return r;
}

JetForm JetForm::derivative_q() const {
    JetForm r(rank_, lo_, hi_, q_trunc_);
    r.weight = weight + 2;
    r.index = index;
    for (auto& [l, c] : coeffs_) r.set(l, c.derivative_qdq());
    return r;
}

JetForm JetForm::shifted(int i, int k) const {
    IVec lo = lo_, hi = hi_;
    lo[i] += k;
    hi[i] += k;
    JetForm r(rank_, lo, hi, q_trunc_);
    r.weight = weight - k;
    r.index = index;
    for (auto& [l, c] : coeffs_) {
        IVec m = l;
        m[i] += k;
        r.coeffs_[m] = c;
    }
    return r;
}

JetForm JetForm::windowed(const IVec& lo, const IVec& hi) const {
    for (int i = 0; i < rank_; ++i)
        if (lo[i] < lo_[i] || hi[i] > hi_[i])
            throw JetOrderExceeded("cannot widen a jet window");
    JetForm r(rank_, lo, hi, q_trunc_);
    r.weight = weight;
    r.index = index;
    for (auto& [l, c] : coeffs_) r.set(l, c);
    return r;
}

JetForm JetForm::q_truncated(const Rat& t) const {
    JetForm r(rank_, lo_, hi_, std::min(t, q_trunc_));
    r.weight = weight;
    r.index = index;
    for (auto& [l, c] : coeffs_) r.set(l, c);
    return r;
}

JetForm JetForm::times_exp(int i, const Rat& c_num, const CycQ& unit) const {
    // multiply by unit * exp(c_num * w_i); the exponential is entire, so only the
    // upper window in variable i matters
    JetForm r(rank_, lo_, hi_, q_trunc_);
    r.weight = weight;
    r.index = index;
    for (auto& [l, c] : coeffs_) {
        Rat pw(1);
        Int fact(1);
        for (int j = 0; l[i] + j <= hi_[i]; ++j) {
            if (j > 0) {
                pw *= c_num;
                fact *= j;
            }
            IVec m = l;
            m[i] += j;
            r.add_to(m, c * (unit * (pw / Rat(fact))));
        }
    }
    return r;
}

bool JetForm::equal_on(const JetForm& o, const IVec& lo, const IVec& hi, const Rat& q_order) const {
    // iterate the requested box
    IVec l = lo;
    while (true) {
        if (!coeff(l).equal_up_to(o.coeff(l), q_order)) return false;
        int i = 0;
        while (i < rank_) {
            if (++l[i] <= hi[i]) break;
            l[i] = lo[i];
            ++i;
        }
        if (i == rank_) return true;
    }
}

void JetForm::tag_jacobi(int w, RatMat idx) {
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) {
            if (idx[i][j] != idx[j][i]) throw BadParam("index matrix must be symmetric");
            Rat m = idx[i][j];
            bool ok = (i == j) ? is_integer(m * 2) : is_integer(m * 4);
            if (!ok) throw BadParam("index fails the 2B_M integrality sanity check");
        }
    weight = w;
    index = std::move(idx);
    jacobi_tagged = true;
}

std::string JetForm::str(int max_terms) const {
    std::ostringstream os;
    int n = 0;
    for (auto& [l, c] : coeffs_) {
        if (n++ >= max_terms) {
            os << "...";
            break;
        }
        os << "w^(";
        for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << l[i];
        os << "): " << c.str(6) << "\n";
    }
    return os.str();
}

JetForm multiply_raw(const JetForm& a, const JetForm& b, const IVec& lo, const IVec& hi) {
    if (a.rank() != b.rank()) throw BadParam("jet rank mismatch");
    int n = a.rank();
    Rat qt = std::min(a.q_trunc() + min_q_floor(b), b.q_trunc() + min_q_floor(a));
    JetForm r(n, lo, hi, qt);
    r.weight = a.weight + b.weight;
    IVec l(n);
    for (auto& [l1, c1] : a.coeffs())
        for (auto& [l2, c2] : b.coeffs()) {
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                l[i] = l1[i] + l2[i];
                if (l[i] < lo[i] || l[i] > hi[i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) r.add_to(l, c1 * c2);
        }
    return r;
}

JetForm reboxed_window(const JetForm& src, const IVec& lo, const IVec& hi) {
    JetForm r(src.rank(), lo, hi, src.q_trunc());
    r.weight = src.weight;
    r.index = src.index;
    for (auto& [l, c] : src.coeffs()) r.set(l, c);
    return r;
}

JetForm embed_axis(const JetForm& single, int axis, int rank, const IVec& lo, const IVec& hi) {
    if (single.rank() != 1) throw BadParam("embed_axis expects a rank-1 jet");
    for (int i = 0; i < rank; ++i) {
        if (i == axis) continue;
        if (lo[i] > 0 || hi[i] < 0) throw BadParam("embed_axis window must contain degree 0");
    }
    if (lo[axis] < single.lo()[0] || hi[axis] > single.hi()[0])
        throw JetOrderExceeded("embed_axis window exceeds the source jet");
    JetForm r(rank, lo, hi, single.q_trunc());
    r.weight = single.weight;
    for (auto& [l, c] : single.coeffs()) {
        IVec m(rank, 0);
        m[axis] = l[0];
        r.set(m, c);
    }
    return r;
}

JetForm reflected(const JetForm& j, int axis) {
    JetForm r(j.rank(), j.lo(), j.hi(), j.q_trunc());
    r.weight = j.weight;
    r.index = j.index;
    for (auto& [l, c] : j.coeffs()) r.set(l, l[axis] % 2 == 0 ? c : -c);
    return r;
}

JetForm compose_linear(const JetForm& single, const IVec& s, const IVec& lo, const IVec& hi) {
    if (single.rank() != 1) throw BadParam("compose_linear expects a rank-1 jet");
    if (single.lo()[0] < 0) throw BadParam("compose_linear expects a regular jet");
    int n = (int)s.size();
    int need = 0;
    for (int i = 0; i < n; ++i) need += std::max(hi[i], 0);
    if (single.hi()[0] < need)
        throw JetOrderExceeded("compose_linear: single-variable jet too short for the target window");
    JetForm r(n, lo, hi, single.q_trunc());
    r.weight = single.weight;
    // (s.w)^j = sum over exponent vectors e with |e| = j of j!/prod(e!) * prod s_i^e_i
    IVec e(n, 0);
    std::function<void(int, int, const Rat&)> rec = [&](int pos, int total, const Rat& mult) {
        if (pos == n) {
            if (total < single.lo()[0]) return; // below the true valuation
            QSeries cj = single.coeff({total});
            if (!cj.is_zero()) r.add_to(e, cj * (mult * Rat(factorial(total))));
            return;
        }
        for (int k = 0;; ++k) {
            e[pos] = k;
            if (k > 0 && s[pos] == 0) {
                e[pos] = 0;
                break;
            }
            if (e[pos] > hi[pos] || total + k > single.hi()[0]) {
                e[pos] = 0;
                break;
            }
            Rat m = mult;
            Rat spw(1);
            for (int t = 0; t < k; ++t) spw *= Rat(s[pos]);
            m = mult * spw / Rat(factorial(k));
            rec(pos + 1, total + k, m);
        }
        e[pos] = 0;
    };
    rec(0, 0, Rat(1));
    return r;
}

JetForm iterated_inv_power(const IVec& s, int k, const IVec& lo, const IVec& hi, const Rat& q_trunc) {
    int n = (int)s.size();
    int d = 0;
    while (d < n && s[d] == 0) ++d;
    if (d == n) throw BadParam("iterated_inv_power needs a nonzero direction");
    // with u = s_d w_d and R the later terms:
    // (u + R)^-k = sum_j binom(k+j-1, j) (-1)^j s_d^(-k-j) R^j w_d^(-k-j);
    // terms below the window in w_d are clipped (callers size the box)
    JetForm r(n, lo, hi, q_trunc);
    r.weight = -k;
    IVec e(n, 0);
    std::function<void(int, int, const Rat&)> rec = [&](int pos, int j, const Rat& mult) {
        if (pos == n) {
            Rat c = Rat(binomial(k + j - 1, j)) * mult * Rat(factorial(j));
            if (j % 2 == 1) c = -c;
            Rat sdpw(1);
            for (int t = 0; t < k + j; ++t) sdpw *= Rat(s[d]);
            e[d] = -k - j;
            if (e[d] >= lo[d]) r.add_to(e, QSeries::constant(CycQ(c / sdpw), q_trunc));
            e[d] = 0;
            return;
        }
        for (int m = 0;; ++m) {
            e[pos] = m;
            if (m > 0 && s[pos] == 0) {
                e[pos] = 0;
                break;
            }
            if (m > hi[pos]) {
                e[pos] = 0;
                break;
            }
            Rat spw(1);
            for (int t = 0; t < m; ++t) spw *= Rat(s[pos]);
            rec(pos + 1, j + m, mult * spw / Rat(factorial(m)));
        }
        e[pos] = 0;
    };
    rec(d + 1, 0, Rat(1));
    return r;
}

// ---- FourierForm -----------------------------------------------------------

FourierForm::FourierForm(int rank, Rat window, Rat q_trunc)
    : rank_(rank), window_(std::move(window)), q_trunc_(std::move(q_trunc)) {}

QSeries FourierForm::coeff(const std::vector<Rat>& r) const {
    auto it = sup_.find(r);
    return it == sup_.end() ? QSeries::zero(q_trunc_) : it->second;
}

void FourierForm::set(const std::vector<Rat>& r, QSeries s) {
    for (auto& x : r)
        if (x > window_ || x < -window_) throw WindowOverflow("zeta exponent outside the window");
    QSeries t = s.trunc() > q_trunc_ ? s.truncated(q_trunc_) : std::move(s);
    if (t.is_zero())
        sup_.erase(r);
    else
        sup_[r] = std::move(t);
}

void FourierForm::add_to(const std::vector<Rat>& r, const QSeries& s) {
    auto it = sup_.find(r);
    if (it == sup_.end()) {
        set(r, s);
        return;
    }
    QSeries t = it->second + s;
    if (t.trunc() > q_trunc_) t = t.truncated(q_trunc_);
    if (t.is_zero())
        sup_.erase(it);
    else
        it->second = std::move(t);
}

FourierForm operator+(const FourierForm& a, const FourierForm& b) {
    if (a.rank_ != b.rank_) throw BadParam("fourier rank mismatch");
    FourierForm r(a.rank_, std::max(a.window_, b.window_), std::min(a.q_trunc_, b.q_trunc_));
    r.weight = a.weight;
    r.index = a.index.empty() ? b.index : a.index;
    for (auto& [k, c] : a.sup_) r.add_to(k, c);
    for (auto& [k, c] : b.sup_) r.add_to(k, c);
    if (a.polar_jet && b.polar_jet)
        r.polar_jet = *a.polar_jet + *b.polar_jet;
    else if (a.polar_jet)
        r.polar_jet = a.polar_jet;
    else if (b.polar_jet)
        r.polar_jet = b.polar_jet;
    return r;
}

FourierForm operator*(const FourierForm& a, const FourierForm& b) {
    if (a.rank_ != b.rank_) throw BadParam("fourier rank mismatch");
    if (a.polar_jet || b.polar_jet) throw BadParam("product of fourier forms with polar parts");
    FourierForm r(a.rank_, a.window_ + b.window_, std::min(a.q_trunc_, b.q_trunc_));
    r.weight = a.weight + b.weight;
    std::vector<Rat> k(a.rank_);
    for (auto& [k1, c1] : a.sup_)
        for (auto& [k2, c2] : b.sup_) {
            for (int i = 0; i < a.rank_; ++i) k[i] = k1[i] + k2[i];
            r.add_to(k, c1 * c2);
        }
    return r;
}

FourierForm FourierForm::operator*(const QSeries& s) const {
    FourierForm r(rank_, window_, std::min(q_trunc_ + std::min(s.floor_exp(), Rat(0)), s.trunc()));
    r.weight = weight;
    r.index = index;
    for (auto& [k, c] : sup_) r.set(k, c * s);
    if (polar_jet) r.polar_jet = *polar_jet * s;
    return r;
}

FourierForm FourierForm::operator*(const CycQ& c) const {
    FourierForm r(rank_, window_, q_trunc_);
    r.weight = weight;
    r.index = index;
    if (!c.is_zero())
        for (auto& [k, v] : sup_) r.sup_[k] = v * c;
    if (polar_jet) r.polar_jet = *polar_jet * c;
    return r;
}

QSeries FourierForm::specialize(const LatticeShift& X) const {
    if (polar_jet) throw BadParam("specialize unsupported for forms with a polar part");
    Rat worst(0);
    for (auto& [r, c] : sup_) {
        Rat shift(0);
        for (int i = 0; i < rank_; ++i) shift += r[i] * X.lambda[i];
        if (shift < worst) worst = shift;
    }
    QSeries out(q_trunc_ + worst);
    for (auto& [r, c] : sup_) {
        Rat shift(0);
        Rat twist(0);
        for (int i = 0; i < rank_; ++i) {
            shift += r[i] * X.lambda[i];
            twist += r[i] * X.mu[i];
        }
        QSeries term = (c * CycQ::root_of_unity(twist)).shifted(shift);
        out = out + term.truncated(std::min(term.trunc(), out.trunc()));
    }
    return out;
}

std::string FourierForm::str(int max_terms) const {
    std::ostringstream os;
    int n = 0;
    for (auto& [r, c] : sup_) {
        if (n++ >= max_terms) {
            os << "...";
            break;
        }
        os << "zeta^(";
        for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << rat_str(r[i]);
        os << "): " << c.str(6) << "\n";
    }
    return os.str();
}

FourierForm slash_X(const FourierForm& f, const LatticeShift& X, const RatMat& M) {
    if (f.polar_jet) throw BadParam("slash unsupported for forms with a polar part");
    int n = f.rank();
    // constant prefactors and the global q-shift
    CycQ pref = CycQ::root_of_unity(bilinear(M, X.lambda, X.lambda) + Rat(2) * bilinear(M, X.lambda, X.mu) +
                                    bilinear(M, X.mu, X.mu));
    Rat qshift = bilinear(M, X.lambda, X.lambda);
    // e(2 B(lambda, z)) multiplies zeta-exponents by 2 lambda M
    std::vector<Rat> zshift(n, Rat(0));
    if (!M.empty())
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) zshift[i] += Rat(2) * X.lambda[j] * M[j][i];

    FourierForm r(n, f.window(), f.q_trunc());
    r.weight = f.weight;
    r.index = M;
    r.declared_poles = f.declared_poles;
    std::vector<Rat> k(n);
    for (auto& [r0, c] : f.support()) {
        Rat rl(0), rm(0);
        for (int i = 0; i < n; ++i) {
            k[i] = r0[i] + zshift[i];
            if (k[i] > f.window() || k[i] < -f.window())
                throw WindowOverflow("slash moved support outside the zeta-window");
            rl += r0[i] * X.lambda[i];
            rm += r0[i] * X.mu[i];
        }
        QSeries term = (c * (pref * CycQ::root_of_unity(rm))).shifted(rl + qshift);
        // keep exact validity bookkeeping: extend the form truncation downward only
        r.add_to(k, term.trunc() > r.q_trunc() ? term.truncated(r.q_trunc()) : term);
    }
    return r;
}

JetForm fourier_to_jet(const FourierForm& f, const IVec& pole_spec, const IVec& lo, const IVec& hi) {
    int n = f.rank();
    for (auto& [s, u, v] : f.declared_poles) {
        int which = -1, nz = 0;
        for (int i = 0; i < n; ++i)
            if (s[i] != 0) {
                which = i;
                ++nz;
            }
        if (nz != 1 || s[which] != 1 || u != 0 || v != 0)
            throw NonOrthogonalPoles("only lattice divisors along coordinate axes are supported");
        if (pole_spec[which] < 1)
            throw NonOrthogonalPoles("pole_spec does not clear a declared divisor");
    }
    for (int i = 0; i < n; ++i)
        if (pole_spec[i] != 0)
            throw NonOrthogonalPoles("theta-clearing conversion is handled by the kernel layer");
    JetForm r(n, lo, hi, f.q_trunc());
    r.weight = f.weight;
    r.index = f.index;
    IVec l(n);
    std::function<void(const std::vector<Rat>&, const QSeries&, int, const Rat&)> spread =
        [&](const std::vector<Rat>& rv, const QSeries& c, int pos, const Rat& mult) {
            if (pos == n) {
                r.add_to(l, c * mult);
                return;
            }
            Rat pw(1);
            Int fact(1);
            for (int j = std::max(lo[pos], 0); j <= hi[pos]; ++j) {
                // exp(r w): w^j coefficient r^j / j!
                Rat cj(1);
                for (int t = 0; t < j; ++t) cj *= rv[pos];
                cj /= Rat(factorial(j));
                l[pos] = j;
                spread(rv, c, pos + 1, mult * cj);
            }
            l[pos] = std::max(lo[pos], 0);
        };
    for (auto& [rv, c] : f.support()) spread(rv, c, 0, Rat(1));
    if (f.polar_jet) {
        if (n != 1) throw BadParam("polar parts are rank-1 only");
        r = r + f.polar_jet->windowed(lo, hi);
    }
    return r;
}

} // namespace qb
