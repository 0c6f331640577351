#include "jalgebra.hpp"

#include "errors.hpp"
#include "kernels.hpp"

#include <sstream>

namespace qb {

int JAtom::weight() const {
    switch (kind) {
        case TH: return -1;
        case A: return 1;
        case E2: return 2;
        case E3: return 3;
        case GE2: return 2;
        case G4: return 4;
        case G6: return 6;
    }
    return 0;
}

JPoly JPoly::constant(const Rat& r) {
    JPoly p;
    if (r != 0) p.terms_[Mono{}] = r;
    return p;
}

JPoly JPoly::atom(JAtom::Kind kind, const IVec& arg, int exponent) {
    JPoly p;
    if (exponent == 0) return constant(Rat(1));
    Mono m;
    m[JAtom{kind, arg}] = exponent;
    p.terms_[m] = Rat(1);
    return p;
}

void JPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end())
        terms_[m] = c;
    else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

JPoly& JPoly::operator+=(const JPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

JPoly operator*(const JPoly& a, const JPoly& b) {
    JPoly r;
    for (auto& [m1, c1] : a.terms_)
        for (auto& [m2, c2] : b.terms_) {
            JPoly::Mono m = m1;
            for (auto& [g, e] : m2) {
                m[g] += e;
                if (m[g] == 0) m.erase(g);
            }
            r.add_term(m, c1 * c2);
        }
    return r;
}

JPoly JPoly::operator*(const Rat& r) const {
    JPoly p;
    if (r == 0) return p;
    for (auto& [m, c] : terms_) p.terms_[m] = c * r;
    return p;
}

bool JPoly::is_homogeneous(int* weight) const {
    bool first = true;
    int w = 0;
    for (auto& [m, c] : terms_) {
        int mw = 0;
        for (auto& [g, e] : m) mw += g.weight() * e;
        if (first) {
            w = mw;
            first = false;
        } else if (mw != w)
            return false;
    }
    if (weight) *weight = w;
    return true;
}

std::string JPoly::str() const {
    static const char* names[] = {"Th", "A", "E2", "E3", "e2", "g4", "g6"};
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (auto& [g, e] : m) {
            os << "*" << names[g.kind];
            if (!g.arg.empty()) {
                os << "(";
                for (size_t i = 0; i < g.arg.size(); ++i) os << (i ? "+" : "") << "w" << i + 1 << (g.arg[i] == 1 ? "" : "*");
                os << ")";
            }
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

// single-argument derivative images (the chain rule adds the direction factor)
JPoly dz_image(const JAtom& g) {
    switch (g.kind) {
        case JAtom::TH: return JPoly::atom(JAtom::A, g.arg) * JPoly::atom(JAtom::TH, g.arg);
        case JAtom::A: return JPoly::atom(JAtom::E2, g.arg) * Rat(-1);
        case JAtom::E2: return JPoly::atom(JAtom::E3, g.arg) * Rat(-2);
        case JAtom::E3: {
            // E4 = (E2 + e2)^2 - 5 g4
            JPoly wp = JPoly::atom(JAtom::E2, g.arg) + JPoly::atom(JAtom::GE2);
            JPoly e4 = wp * wp - JPoly::atom(JAtom::G4) * Rat(5);
            return e4 * Rat(-3);
        }
        default: return JPoly();
    }
}

JPoly dtau_image(const JAtom& g) {
    JPoly e2g = JPoly::atom(JAtom::GE2);
    switch (g.kind) {
        case JAtom::GE2: return e2g * e2g - JPoly::atom(JAtom::G4) * Rat(5);
        case JAtom::G4: return e2g * JPoly::atom(JAtom::G4) * Rat(4) + JPoly::atom(JAtom::G6) * Rat(14);
        case JAtom::G6:
            return e2g * JPoly::atom(JAtom::G6) * Rat(6) +
                   JPoly::atom(JAtom::G4) * JPoly::atom(JAtom::G4) * make_rat(60, 7);
        case JAtom::TH: {
            JPoly a = JPoly::atom(JAtom::A, g.arg);
            JPoly e2 = JPoly::atom(JAtom::E2, g.arg);
            JPoly fac = (a * a - e2) * make_rat(1, 2) - e2g * make_rat(3, 2);
            return fac * JPoly::atom(JAtom::TH, g.arg);
        }
        case JAtom::A:
            return JPoly::atom(JAtom::E3, g.arg) -
                   JPoly::atom(JAtom::A, g.arg) * JPoly::atom(JAtom::E2, g.arg);
        case JAtom::E2: {
            JPoly wp = JPoly::atom(JAtom::E2, g.arg) + e2g;
            JPoly e4 = wp * wp - JPoly::atom(JAtom::G4) * Rat(5);
            return e4 * Rat(3) - JPoly::atom(JAtom::E2, g.arg) * JPoly::atom(JAtom::E2, g.arg) -
                   JPoly::atom(JAtom::A, g.arg) * JPoly::atom(JAtom::E3, g.arg) * Rat(2);
        }
        case JAtom::E3: {
            // derived from the Weierstrass relations; grounded by verify_derivation_tables
            JPoly wp = JPoly::atom(JAtom::E2, g.arg) + e2g;
            JPoly e3 = JPoly::atom(JAtom::E3, g.arg);
            JPoly a = JPoly::atom(JAtom::A, g.arg);
            JPoly e2 = JPoly::atom(JAtom::E2, g.arg);
            return wp * e3 * Rat(4) + e2g * e3 * Rat(2) - e2 * e3 - a * wp * wp * Rat(3) +
                   a * JPoly::atom(JAtom::G4) * Rat(15);
        }
    }
    return JPoly();
}

// generic derivation driven by an atom-image map
template <typename ImageFn>
JPoly derive(const JPoly& f, ImageFn image) {
    JPoly out;
    for (auto& [m, c] : f.terms()) {
        for (auto& [g, e] : m) {
            JPoly img = image(g);
            if (img.is_zero()) continue;
            JPoly::Mono rest = m;
            if (e == 1)
                rest.erase(g);
            else
                rest[g] = e - 1;
            JPoly base;
            base.add_term(rest, c * Rat(e));
            out += base * img;
        }
    }
    return out;
}

} // namespace

JPoly apply_D_tau(const JPoly& f) {
    return derive(f, [](const JAtom& g) { return dtau_image(g); });
}

JPoly apply_D_z(const JPoly& f, int u) {
    return derive(f, [u](const JAtom& g) {
        if (g.arg.empty() || u >= (int)g.arg.size() || g.arg[u] == 0) return JPoly();
        return dz_image(g) * Rat(g.arg[u]);
    });
}

JPoly apply_delta_tau(const JPoly& f) {
    return derive(f, [](const JAtom& g) {
        if (g.kind == JAtom::GE2) return JPoly::constant(Rat(1));
        if (g.kind == JAtom::E2) return JPoly::constant(Rat(-1));
        return JPoly();
    });
}

JPoly apply_delta_z(const JPoly& f, int u) {
    return derive(f, [u](const JAtom& g) {
        if (g.kind != JAtom::A || g.arg.empty() || u >= (int)g.arg.size()) return JPoly();
        return JPoly::constant(Rat(g.arg[u]));
    });
}

JPoly apply_W(const JPoly& f) {
    JPoly out;
    for (auto& [m, c] : f.terms()) {
        int w = 0;
        for (auto& [g, e] : m) w += g.weight() * e;
        out.add_term(m, c * Rat(w));
    }
    return out;
}

JPoly apply_I(const JPoly& f, int u, int v) {
    JPoly out;
    for (auto& [m, c] : f.terms()) {
        Rat b(0);
        for (auto& [g, e] : m) {
            if (g.kind != JAtom::TH || g.arg.empty()) continue;
            if (u >= (int)g.arg.size() || v >= (int)g.arg.size()) continue;
            b += Rat(e) * make_rat(1, 2) * Rat(g.arg[u]) * Rat(g.arg[v]);
        }
        out.add_term(m, c * b);
    }
    return out;
}

JetForm evaluate_rank1(const JPoly& f, int hi, const Rat& q_trunc) {
    // pole budget: sum of per-factor pole orders, so products keep an exact window
    int budget = 0;
    for (auto& [m, c] : f.terms()) {
        int b = 0;
        for (auto& [g, e] : m) {
            if (g.kind == JAtom::TH && e < 0) b += -e;
            if (g.kind == JAtom::A) b += std::max(e, 0);
            if (g.kind == JAtom::E2) b += 2 * std::max(e, 0);
            if (g.kind == JAtom::E3) b += 3 * std::max(e, 0);
        }
        budget = std::max(budget, b);
    }
    int H = hi + 2 * budget + 2;
    JetForm out(1, {-budget - 1}, {hi}, q_trunc);
    for (auto& [m, c] : f.terms()) {
        JetForm t = JetForm::constant(1, QSeries::constant(CycQ(c), q_trunc), {-H}, {H});
        for (auto& [g, e] : m) {
            if (!g.arg.empty() && (g.arg.size() != 1 || g.arg[0] != 1))
                throw BadParam("evaluate_rank1 handles single-variable arguments only");
            JetForm base(1, {0}, {0}, q_trunc);
            switch (g.kind) {
                case JAtom::TH: base = theta_hat_jet(H, q_trunc); break;
                case JAtom::A: base = a_hat_jet(H, q_trunc); break;
                case JAtom::E2: base = e_hat_jet(2, H, q_trunc); break;
                case JAtom::E3: base = e_hat_jet(3, H, q_trunc); break;
                case JAtom::GE2:
                    base = JetForm::constant(1, e2_series(q_trunc), {-H}, {H});
                    break;
                case JAtom::G4:
                    base = JetForm::constant(1, g_hat_series(4, q_trunc), {-H}, {H});
                    break;
                case JAtom::G6:
                    base = JetForm::constant(1, g_hat_series(6, q_trunc), {-H}, {H});
                    break;
            }
            int p = e;
            JetForm b = base;
            if (p < 0) {
                b = base.inverse();
                p = -p;
            }
            for (int t2 = 0; t2 < p; ++t2) t = multiply_raw(t, b, {-H}, {H});
        }
        out = out + reboxed_window(t, out.lo(), out.hi());
    }
    return out;
}

void verify_derivation_tables(int hi, const Rat& q_trunc) {
    auto check = [&](const JPoly& f, bool dz) {
        JetForm lhs = dz ? evaluate_rank1(f, hi + 1, q_trunc).derivative_w(0)
                         : evaluate_rank1(f, hi, q_trunc).derivative_q();
        JPoly img = dz ? apply_D_z(f, 0) : apply_D_tau(f);
        JetForm rhs = evaluate_rank1(img, hi, q_trunc);
        IVec lo{std::max(lhs.lo()[0], rhs.lo()[0])}, h{std::min(lhs.hi()[0], rhs.hi()[0])};
        if (!lhs.equal_on(rhs, lo, h, q_trunc))
            throw std::logic_error("derivation table entry failed its jet cross-check");
    };
    IVec e1{1};
    for (auto kind : {JAtom::TH, JAtom::A, JAtom::E2, JAtom::E3}) {
        check(JPoly::atom(kind, e1), true);
        check(JPoly::atom(kind, e1), false);
    }
    for (auto kind : {JAtom::GE2, JAtom::G4, JAtom::G6}) check(JPoly::atom(kind), false);
}

} // namespace qb
