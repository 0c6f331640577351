#include "quasimodular.hpp"

#include "errors.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <sstream>

namespace qb {

QMPoly QMPoly::generator(int k) {
    QMPoly p;
    Mono m;
    if (k == 2)
        m.a = 1;
    else if (k == 4)
        m.b = 1;
    else if (k == 6)
        m.c = 1;
    else
        throw BadParam("generators are G2, G4, G6");
    p.terms_[m] = Rat(1);
    return p;
}

QMPoly QMPoly::constant(const Rat& r) {
    QMPoly p;
    if (r != 0) p.terms_[Mono{}] = r;
    return p;
}

bool QMPoly::is_homogeneous(int* weight) const {
    if (terms_.empty()) {
        if (weight) *weight = 0;
        return true;
    }
    int w = terms_.begin()->first.weight();
    for (auto& [m, c] : terms_)
        if (m.weight() != w) return false;
    if (weight) *weight = w;
    return true;
}

int QMPoly::weight() const {
    int w = 0;
    if (!is_homogeneous(&w)) throw NotHomogeneous("mixed-weight quasimodular polynomial");
    return w;
}

int QMPoly::depth() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.a);
    return d;
}

QMPoly& QMPoly::operator+=(const QMPoly& o) {
    for (auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end())
            terms_[m] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

QMPoly& QMPoly::operator-=(const QMPoly& o) { return *this += o * Rat(-1); }

QMPoly operator*(const QMPoly& a, const QMPoly& b) {
    QMPoly r;
    for (auto& [m1, c1] : a.terms_)
        for (auto& [m2, c2] : b.terms_) {
            QMPoly::Mono m{m1.a + m2.a, m1.b + m2.b, m1.c + m2.c};
            auto it = r.terms_.find(m);
            if (it == r.terms_.end())
                r.terms_[m] = c1 * c2;
            else {
                it->second += c1 * c2;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

QMPoly QMPoly::operator*(const Rat& r) const {
    QMPoly p;
    if (r == 0) return p;
    for (auto& [m, c] : terms_) p.terms_[m] = c * r;
    return p;
}

void QMPoly::set(const Mono& m, const Rat& r) {
    if (r == 0)
        terms_.erase(m);
    else
        terms_[m] = r;
}

QSeries QMPoly::expand(const Rat& trunc) const {
    QSeries g2 = eisenstein_G(2, trunc), g4 = eisenstein_G(4, trunc), g6 = eisenstein_G(6, trunc);
    QSeries out(trunc);
    for (auto& [m, c] : terms_) {
        QSeries t = QSeries::constant(CycQ(c), trunc);
        for (int i = 0; i < m.a; ++i) t = t * g2;
        for (int i = 0; i < m.b; ++i) t = t * g4;
        for (int i = 0; i < m.c; ++i) t = t * g6;
        out = out + t;
    }
    return out;
}

QMPoly QMPoly::delta_tau() const {
    QMPoly r;
    for (auto& [m, c] : terms_) {
        if (m.a == 0) continue;
        Mono n = m;
        n.a -= 1;
        QMPoly t;
        t.terms_[n] = c * Rat(m.a) * make_rat(-1, 2);
        r += t;
    }
    return r;
}

QMPoly QMPoly::weight_op() const { return *this * Rat(weight()); }

QMPoly QMPoly::d_tau() const {
    if (terms_.empty()) return QMPoly();
    int k = weight();
    int p = std::min(depth() + 1, (k + 2) / 2);
    long long margin = 10;
    // enough coefficients to pin the weight-(k+2) solve
    long long basis_bound = 0;
    for (auto& el : spanning_set(1, k + 2, p, Rat(1))) {
        (void)el;
        ++basis_bound;
    }
    Rat trunc(basis_bound + margin + 1);
    QSeries d = expand(trunc).derivative_qdq();
    Certificate cert = certify(d, k + 2, 1, p, margin, "D_tau");
    if (!cert.ok()) throw CertifyFailed("derivative left the quasimodular ring (bookkeeping error)");
    return qmpoly_from_certificate(cert);
}

QMPoly QMPoly::serre() const {
    int k = weight();
    return d_tau() + QMPoly::generator(2) * *this * Rat(2 * k);
}

std::string QMPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        if (m.a) os << "*G2^" << m.a;
        if (m.b) os << "*G4^" << m.b;
        if (m.c) os << "*G6^" << m.c;
    }
    return os.str();
}

std::vector<SpanElement> spanning_set(long long level, int weight, int depth, const Rat& trunc) {
    std::vector<SpanElement> out;
    if (weight < 0) return out;
    if (level == 1) {
        for (int a = 0; a <= depth && 2 * a <= weight; ++a)
            for (int b = 0; 2 * a + 4 * b <= weight; ++b) {
                int rem = weight - 2 * a - 4 * b;
                if (rem % 6 != 0) continue;
                int c = rem / 6;
                QMPoly p;
                p.set(QMPoly::Mono{a, b, c}, Rat(1));
                std::ostringstream name;
                name << "G2^" << a << "*G4^" << b << "*G6^" << c;
                out.push_back({name.str(), p.expand(trunc), a});
            }
        return out;
    }
    if (level < 1 || level > 4) throw UnsupportedLevel("levels 1..4 are supported");
    // heuristic family for Gamma_1(N): rescaled level-1 generators G_j(d tau), d | N^2,
    // together with torsion weight-1 series h_{u,v}, (u,v) in (1/N)Z^2 \ Z^2, taken in
    // monomials of bounded h-degree. Completeness is NOT guaranteed.
    // candidates are generated at a fixed probe order so pruning (and hence the span
    // size) does not depend on the requested truncation
    Rat probe_order = Rat(26);
    Rat gen_trunc = std::max(trunc, probe_order);
    long long N = level;
    std::vector<std::pair<std::string, QSeries>> weight1;
    for (long long a = 0; a < N; ++a)
        for (long long b = 0; b < N; ++b) {
            if (a == 0 && b == 0) continue;
            Rat u(a, N), v(b, N);
            std::ostringstream name;
            name << "h[" << rat_str(u) << "," << rat_str(v) << "]";
            weight1.push_back({name.str(), klein_h(u, v, gen_trunc)});
        }
    std::vector<long long> divisors;
    for (long long d = 1; d <= N * N; ++d)
        if ((N * N) % d == 0) divisors.push_back(d);
    struct Gen {
        std::string name;
        QSeries s;
        int w;
        int dep;
    };
    std::vector<Gen> gens;
    for (auto& [nm, s] : weight1) gens.push_back({nm, s, 1, 0});
    for (int k : {2, 4, 6}) {
        if (k > weight) continue;
        QSeries base = eisenstein_G(k, gen_trunc);
        for (long long d : divisors) {
            // G_k(d tau): q -> q^d; note trunc grows, re-truncate for uniformity
            QSeries s = base.dilate(d).truncated(gen_trunc);
            std::ostringstream name;
            name << "G" << k << "(" << d << "t)";
            gens.push_back({name.str(), s, k, k == 2 ? 1 : 0});
        }
    }
    // monomials of total weight `weight`, h-degree <= 2, depth (G2-count) <= depth
    int hcap = std::min(weight, 2);
    std::function<void(size_t, int, int, int, QSeries, std::string)> rec =
        [&](size_t idx, int wrem, int hdeg, int dep, QSeries acc, std::string name) {
            if (wrem == 0) {
                out.push_back({name.empty() ? "1" : name, acc, dep});
                return;
            }
            if (idx >= gens.size()) return;
            rec(idx + 1, wrem, hdeg, dep, acc, name);
            auto& g = gens[idx];
            if (g.w <= wrem && (g.w > 1 || hdeg < hcap) && dep + g.dep <= depth) {
                rec(idx, wrem - g.w, hdeg + (g.w == 1 ? 1 : 0), dep + g.dep, acc * g.s,
                    name.empty() ? g.name : name + "*" + g.name);
            }
        };
    rec(0, weight, 0, 0, QSeries::constant(CycQ::one(), gen_trunc), "");
    // the raw family is heavily redundant; keep a maximal subset that is linearly
    // independent on the leading coefficient window, so solve orders stay small
    std::vector<SpanElement> pruned;
    std::vector<std::map<Rat, CycQ>> rows;
    Rat probe = Rat(24);
    for (auto& el : out) {
        std::map<Rat, CycQ> vec;
        for (auto& [e, c] : el.series.terms()) {
            if (e >= probe) break;
            vec[e] = c;
        }
        // eliminate against accepted rows
        for (size_t i = 0; i < pruned.size(); ++i) {
            auto& piv = rows[i];
            if (piv.empty() || vec.empty()) continue;
            auto lead = piv.begin();
            auto it = vec.find(lead->first);
            if (it == vec.end()) continue;
            CycQ f = it->second * lead->second.inverse();
            for (auto& [e, c] : piv) {
                auto jt = vec.find(e);
                CycQ nv = (jt == vec.end() ? CycQ::zero() : jt->second) - f * c;
                if (nv.is_zero())
                    vec.erase(e);
                else
                    vec[e] = nv;
            }
        }
        if (!vec.empty()) {
            el.series = el.series.truncated(std::min(trunc, el.series.trunc()));
            pruned.push_back(el);
            rows.push_back(std::move(vec));
        }
    }
    return pruned;
}

namespace {

// exact Gaussian elimination over Q(zeta) on the augmented system
struct LinearSolve {
    bool consistent = true;
    std::vector<CycQ> solution; // pivot solution, zeros on free columns
};

LinearSolve solve_exact(std::vector<std::vector<CycQ>> rows, int ncols) {
    LinearSolve out;
    size_t row = 0;
    std::vector<long long> where(ncols, -1);
    for (int col = 0; col < ncols && row < rows.size(); ++col) {
        size_t sel = row;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[row]);
        CycQ inv = rows[row][col].inverse();
        for (int j = col; j <= ncols; ++j) rows[row][j] = rows[row][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == row || rows[i][col].is_zero()) continue;
            CycQ f = rows[i][col];
            for (int j = col; j <= ncols; ++j) rows[i][j] -= f * rows[row][j];
        }
        where[col] = (long long)row;
        ++row;
    }
    out.solution.assign(ncols, CycQ::zero());
    for (int col = 0; col < ncols; ++col)
        if (where[col] >= 0) out.solution[col] = rows[where[col]][ncols];
    for (size_t i = 0; i < rows.size(); ++i) {
        bool zero = true;
        for (int j = 0; j < ncols; ++j)
            if (!rows[i][j].is_zero()) zero = false;
        if (zero && !rows[i][ncols].is_zero()) {
            out.consistent = false;
            break;
        }
    }
    return out;
}

} // namespace

Certificate certify(const QSeries& target, int weight, long long level, int depth, long long margin,
                    const std::string& name) {
    Certificate cert;
    cert.target = name;
    cert.weight = weight;
    cert.level = level;
    cert.depth = depth;
    cert.margin = margin;
    std::vector<SpanElement> span = spanning_set(level, weight, depth, target.trunc());
    long long B = (long long)span.size();
    cert.solve_order = B;
    for (auto& el : span) cert.basis.push_back(el.name);

    // coefficient slots: union of exponents on the common grid below min trunc
    Rat tmin = target.trunc();
    for (auto& el : span) tmin = std::min(tmin, el.series.trunc());
    std::set<Rat> slots;
    for (auto& [e, c] : target.terms())
        if (e < tmin) slots.insert(e);
    for (auto& el : span)
        for (auto& [e, c] : el.series.terms())
            if (e < tmin) slots.insert(e);
    // pad with the integer grid so "the next m coefficients" always exist
    Rat base = slots.empty() ? Rat(0) : *slots.begin();
    for (Rat e = base; e < tmin; e += 1) slots.insert(e);
    if ((long long)slots.size() < B + margin)
        throw InsufficientTruncation("target truncated below solve order plus margin");

    std::vector<std::vector<CycQ>> rows;
    for (auto& e : slots) {
        std::vector<CycQ> row;
        row.reserve(B + 1);
        for (auto& el : span) row.push_back(el.series.coeff(e));
        row.push_back(target.coeff(e));
        rows.push_back(std::move(row));
    }
    LinearSolve ls = solve_exact(std::move(rows), (int)B);
    if (ls.consistent) {
        cert.status = Certificate::Status::certified;
        cert.solution = std::move(ls.solution);
    } else {
        cert.status = level == 1 ? Certificate::Status::failed : Certificate::Status::inconclusive;
    }
    return cert;
}

QMPoly qmpoly_from_certificate(const Certificate& cert) {
    if (cert.level != 1 || !cert.ok()) throw CertifyFailed("no level-1 certificate to reconstruct from");
    std::vector<SpanElement> span = spanning_set(1, cert.weight, cert.depth, Rat(1));
    QMPoly out;
    for (size_t i = 0; i < span.size(); ++i) {
        if (cert.solution[i].is_zero()) continue;
        // level-1 basis monomials, parse back from the stored exponents
        int a = 0, b = 0, c = 0;
        std::sscanf(span[i].name.c_str(), "G2^%d*G4^%d*G6^%d", &a, &b, &c);
        QMPoly t;
        t.set(QMPoly::Mono{a, b, c}, cert.solution[i].rational_value());
        out += t;
    }
    return out;
}

json Certificate::to_json() const {
    const char* st = status == Status::certified  ? "certified-to-order"
                     : status == Status::failed   ? "failed"
                                                  : "inconclusive";
    json sol = json::array();
    for (auto& c : solution) {
        if (c.is_rational())
            sol.push_back(rat_str(c.rational_value()));
        else
            sol.push_back(qb::to_json(c));
    }
    return json{{"status", st},           {"target", target}, {"weight", weight},
                {"level", level},         {"depth", depth},   {"basis", basis},
                {"solution", sol},        {"solve_order", solve_order},
                {"margin", margin}};
}

} // namespace qb
