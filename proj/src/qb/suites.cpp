#include "suites.hpp"

#include "bracket.hpp"
#include "errors.hpp"
#include "formal.hpp"
#include "jalgebra.hpp"
#include "kernels.hpp"
#include "npoint.hpp"
#include "quasimodular.hpp"
#include "tpoly.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <sstream>

namespace qb {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
    std::vector<CheckResult>* out;
    bool parallel;
    std::vector<std::pair<CheckResult, std::future<std::pair<std::string, std::string>>>> pending;

    void run(const std::string& name, const std::string& anchor,
             std::function<std::pair<std::string, std::string>()> body) {
        CheckResult r{name, anchor, "fail", "", 0};
        auto t0 = Clock::now();
        auto wrapped = [body]() -> std::pair<std::string, std::string> {
            try {
                return body();
            } catch (const std::exception& e) {
                return {"fail", std::string("exception: ") + e.what()};
            }
        };
        if (parallel) {
            pending.emplace_back(r, std::async(std::launch::async, wrapped));
        } else {
            auto [st, detail] = wrapped();
            r.status = st;
            r.detail = detail;
            r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            out->push_back(r);
        }
    }

    void finish() {
        for (auto& [r, fut] : pending) {
            auto t0 = Clock::now();
            auto [st, detail] = fut.get();
            CheckResult done = r;
            done.status = st;
            done.detail = detail;
            done.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            out->push_back(done);
        }
        pending.clear();
    }
};

std::pair<std::string, std::string> verdict(bool ok, const std::string& detail = "") {
    return {ok ? "pass" : "fail", detail};
}

// ---- bloch-okounkov ---------------------------------------------------------

void suite_bloch_okounkov(Checker& ck, const SuiteOptions& opt) {
    long long T1 = opt.order > 0 ? opt.order : 8;
    int J1 = opt.jet_order > 0 ? opt.jet_order : 6;
    ck.run("one-point-jets", "n-point vs theta reciprocal", [T1, J1] {
        JetForm bracket = bo_npoint_bracket(1, J1, Rat(T1 + 1));
        JetForm kernel = theta_hat_inv_jet(J1, Rat(T1 + 1));
        return verdict(bracket.equal_on(kernel, {-1}, {J1}, Rat(T1 + 1)),
                       "orders (q^" + std::to_string(T1) + ", w^" + std::to_string(J1) + ")");
    });
    long long T2 = opt.order > 0 ? std::min(opt.order, (long long)8) : 6;
    int J2 = opt.jet_order > 0 ? std::min(opt.jet_order, 4) : 4;
    ck.run("two-point-dual", "recursion vs bracket side", [T2, J2] {
        bool clean = false;
        JetForm rec = bo_npoint_recursive(2, J2, Rat(T2 + 1), &clean);
        JetForm bracket = bo_npoint_bracket(2, J2, Rat(T2 + 1));
        bool eq = rec.equal_on(bracket, {-1, -1}, {J2, J2}, Rat(T2 + 1));
        return verdict(eq && clean, clean ? "mixed-deep coefficients vanished" : "mixed-deep residue");
    });
    ck.run("level1-quasimodularity", "weight-graded membership, pair products", [&opt] {
        long long margin = opt.margin;
        for (int k1 = 1; k1 <= 9; ++k1)
            for (int k2 = k1; k1 + k2 <= 10; ++k2) {
                int w = k1 + k2;
                long long B = (long long)spanning_set(1, w, w / 2, Rat(1)).size();
                long long T = B + margin + 1;
                QSeries target = qbracket(pf_Q(k1) * pf_Q(k2), T);
                Certificate c = certify(target, w, 1, w / 2, margin, "QQ");
                if (!c.ok())
                    return verdict(false, "failed at (" + std::to_string(k1) + "," + std::to_string(k2) + ")");
                if (w % 2 == 1) {
                    for (auto& s : c.solution)
                        if (!s.is_zero()) return verdict(false, "odd weight not zero");
                }
            }
        return verdict(true, "all k1+k2 <= 10");
    });
    ck.run("klein-forms", "inverse one-point value at torsion points", [] {
        for (Rat a : {make_rat(1, 2), make_rat(1, 3), make_rat(1, 4)}) {
            QSeries prod = qbracket(pf_Q(1, a), 6) * theta_hat_at(Rat(0), a, Rat(7));
            QSeries expected = QSeries::constant(CycQ::root_of_unity(-a / Rat(2)), prod.trunc());
            if (!prod.equal_up_to(expected, Rat(6))) return verdict(false, "a=" + rat_str(a));
            long long M = CycQ::root_of_unity(-a / Rat(2)).modulus();
            if (4 * to_ll(den(a)) % M != 0) return verdict(false, "modulus bound");
        }
        return verdict(true, "constant e(-a/2), a in {1/2, 1/3, 1/4}");
    });
}

// ---- hooks --------------------------------------------------------------------

void suite_hooks(Checker& ck, const SuiteOptions& opt) {
    long long T = opt.order > 0 ? opt.order : 8;
    ck.run("hook-weight2", "second hook moment bracket", [T] {
        QSeries lhs = qbracket(pf_H(2), T);
        return verdict(lhs.equal_up_to(eisenstein_G(2, Rat(T + 1)), Rat(T + 1)), "equals G2");
    });
    ck.run("hook-cmz", "hook moments vs diagonal two-point jets", [] {
        // <H_k> = c (k-2)! [w^(k-2)] <W(z)W(-z)> with one constant across k
        long long T = 6;
        int J = 7;
        JetForm two = bo_npoint_bracket(2, J, Rat(T + 1));
        CycQ c_fixed;
        bool first = true;
        for (int k = 2; k <= 8; k += 2) {
            QSeries jet(Rat(T + 1));
            for (int i = -1; i <= J; ++i) {
                int j = k - 2 - i;
                if (j < -1 || j > J) continue;
                CycQ sign(Rat(j % 2 == 0 ? 1 : -1)); // from the reflected second slot
                jet = jet + two.coeff({i, j}) * sign;
            }
            QSeries hk = qbracket(pf_H(k), T);
            QSeries scaled = jet * Rat(factorial(k - 2));
            if (first) {
                Rat e(0);
                while (scaled.coeff(e).is_zero() && e < Rat(T)) e += 1;
                if (scaled.coeff(e).is_zero()) return verdict(false, "degenerate normalization");
                c_fixed = hk.coeff(e) * scaled.coeff(e).inverse();
                first = false;
            }
            if (!hk.equal_up_to(scaled * c_fixed, Rat(T + 1))) return verdict(false, "k=" + std::to_string(k));
        }
        return verdict(true, "single constant " + c_fixed.reduced().str() + ", even k <= 8");
    });
    ck.run("hook-rescaled", "divisible-hook moments against the rescaled weight-2 series", [T] {
        QSeries lhs = qbracket(pf_H_t(2, 2), T);
        QSeries rhs = eisenstein_G(2, Rat(T + 1)).dilate(2).truncated(Rat(T + 1)) * Rat(2);
        return verdict(lhs.equal_up_to(rhs, Rat(T + 1)), "t = 2");
    });
}

// ---- moments --------------------------------------------------------------------

void suite_moments(Checker& ck, const SuiteOptions& opt) {
    long long T = opt.order > 0 ? opt.order : 6;
    int J = opt.jet_order > 0 ? opt.jet_order : 4;
    ck.run("moment-onepoint", "set-partition kernel, one variable", [T, J] {
        JetForm k = s_npoint_kernel(1, J, Rat(T + 1));
        JetForm b = s_npoint_bracket(1, J, Rat(T + 1));
        return verdict(k.equal_on(b, {-2}, {J}, Rat(T + 1)), "");
    });
    ck.run("moment-twopoint", "set-partition kernel, two variables", [T, J] {
        JetForm k = s_npoint_kernel(2, J, Rat(T + 1));
        JetForm b = s_npoint_bracket(2, J, Rat(T + 1));
        return verdict(k.equal_on(b, {-2, -2}, {J, J}, Rat(T + 1)), "");
    });
    ck.run("moment-rescaled", "divisible-part moments against the rescaled weight-2 series", [T] {
        QSeries lhs = qbracket(pf_S_t(2, 2), T);
        QSeries rhs = eisenstein_G(2, Rat(T + 1)).dilate(2).truncated(Rat(T + 1)) * Rat(2);
        return verdict(lhs.equal_up_to(rhs, Rat(T + 1)), "t = 2");
    });
    ck.run("moment-shifted-weight1", "torsion-shifted first moment is a weight-1 series", [] {
        // <S_1(., 1/4)> equals i * (quarter-character Eisenstein series)
        QSeries lhs = qbracket(pf_S(1, make_rat(1, 4)), 8);
        QSeries rhs(Rat(9));
        rhs.set(Rat(0), CycQ::root_of_unity(make_rat(1, 4)) * make_rat(1, 4));
        for (long long n = 1; n <= 8; ++n) {
            long long s = 0;
            for (long long d = 1; d <= n; ++d)
                if (n % d == 0) s += (d % 4 == 1) ? 1 : (d % 4 == 3 ? -1 : 0);
            rhs.add_to(Rat(n), CycQ::root_of_unity(make_rat(1, 4)) * Rat(s));
        }
        return verdict(lhs.equal_up_to(rhs, Rat(9)), "");
    });
}

// ---- double-moments ---------------------------------------------------------------

void suite_double_moments(Checker& ck, const SuiteOptions& opt) {
    long long T = opt.order > 0 ? opt.order : 6;
    int J = opt.jet_order > 0 ? opt.jet_order : 4;
    ck.run("dm-kernel", "generating kernel vs theta ratio", [T, J] {
        JetForm k = t_npoint_kernel(1, J, Rat(T + 1));
        JetForm b = t_onepoint_bracket(J, Rat(T + 1));
        return verdict(k.equal_on(b, {-1, -1}, {J, J}, Rat(T + 1)), "");
    });
    ck.run("dm-product-rule", "weight-2 induced multiplier", [] {
        // verified constant: <T11 (.) f> = -(1/2) e2 <f>  (the printed one fails; see ledger)
        QSeries e2 = e2_series(Rat(7));
        for (auto& f : {pf_Q(2), pf_Q(4), pf_Q(2) * pf_Q(2)}) {
            QSeries lhs = qbracket(odot(pf_T_unshifted(1, 1), f, 7), 6);
            QSeries rhs = e2 * qbracket(f, 6) * make_rat(-1, 2);
            if (!lhs.equal_up_to(rhs, Rat(7))) return verdict(false, f.name());
        }
        return verdict(true, "constant -(1/2)e2, three f");
    });
    ck.run("dm-projection-values", "depth-0 projections of the double moments", [&opt] {
        long long T = 8;
        struct Item {
            int k, l;
            Rat c;
        };
        // exact verified constants (see ledger)
        std::vector<Item> items{{1, 3, make_rat(5, 6)}, {2, 2, make_rat(5, 6)}, {3, 1, Rat(1)}};
        for (auto& it : items) {
            QSeries p = TPoly::generator(it.k, it.l).pi().bracket(T);
            QSeries expect = eisenstein_G(4, Rat(T + 1)) * it.c;
            if (!p.equal_up_to(expect, Rat(T + 1)))
                return verdict(false, "(" + std::to_string(it.k) + "," + std::to_string(it.l) + ")");
            Certificate cert = certify(p, 4, 1, 0, std::min<long long>(opt.margin, 5), "piT");
            if (!cert.ok()) return verdict(false, "not modular at depth 0");
        }
        QSeries p11 = TPoly::generator(1, 1).pi().bracket(T);
        if (!p11.is_zero()) return verdict(false, "weight-2 projection bracket nonzero");
        return verdict(true, "(1,3),(2,2): (5/6)G4; (3,1): G4; all depth 0");
    });
    ck.run("dm-ubracket-consistency", "induced product re-verified through partition monomials", [] {
        auto f = pf_T_unshifted(1, 1), g = pf_Q(2);
        long long n = 6;
        USeries direct = ubracket(odot(f, g, n), n);
        USeries split = ubracket(f, n) * ubracket(g, n);
        for (auto& [p, c] : direct.coeffs())
            if (!(c == split.coeff(p))) return verdict(false, p.str());
        for (auto& [p, c] : split.coeffs())
            if (!(c == direct.coeff(p))) return verdict(false, p.str());
        return verdict(true, "");
    });
    ck.run("dm-twopoint-factorization", "two-fold induced kernel factors through one-point jets", [] {
        long long T = 4;
        int J = 2;
        JetForm g2 = t_npoint_kernel(2, J, Rat(T + 1));
        JetForm g1 = t_npoint_kernel(1, J, Rat(T + 1));
        IVec l(4, 0);
        for (l[0] = -1; l[0] <= J; ++l[0])
            for (l[1] = -1; l[1] <= J; ++l[1])
                for (l[2] = -1; l[2] <= J; ++l[2])
                    for (l[3] = -1; l[3] <= J; ++l[3]) {
                        QSeries lhs = g2.coeff(l);
                        QSeries rhs = g1.coeff({l[0], l[1]}) * g1.coeff({l[2], l[3]});
                        if (!lhs.equal_up_to(rhs, Rat(T + 1))) return verdict(false, "");
                    }
        return verdict(true, "rank-4 kernel = product of rank-2 kernels");
    });
}

// ---- taylor-xi ---------------------------------------------------------------------

void suite_taylor_xi(Checker& ck, const SuiteOptions& opt) {
    long long T = opt.order > 0 ? opt.order : 5;
    ck.run("xi-weight2-vanishing", "degenerate-branch combination of the one-point context", [T] {
        QJContext f1 = context_F1();
        QSeries xi1 = xi_comb(f1, LatticeShift::zero(1), {1}, false, Rat(T + 1));
        return verdict(xi1.equal_up_to(QSeries::zero(Rat(T + 1)), Rat(T)), "weight-2 branch is zero");
    });
    ck.run("xi-e2-variant", "half-integer Pochhammer variant is modular where both are defined", [T] {
        QJContext f1 = context_F1();
        for (int l : {2, 3}) {
            QSeries a = xi_comb(f1, LatticeShift::zero(1), {l}, false, Rat(T + 1));
            QSeries b = xi_comb(f1, LatticeShift::zero(1), {l}, true, Rat(T + 1));
            Certificate ca = certify(a, 1 + l, 1, 0, 2, "xi");
            Certificate cb = certify(b, 1 + l, 1, 0, 2, "xi-e2");
            if (!ca.ok() || !cb.ok()) return verdict(false, "xi not modular at l=" + std::to_string(l));
        }
        return verdict(true, "both variants modular, l <= 3");
    });
    ck.run("functional-equation", "integral-translate covariance of Taylor coefficients", [T] {
        QJContext f1 = context_F1();
        RatMat M = f1.index;
        std::vector<std::pair<Rat, Rat>> Xs{{Rat(0), Rat(0)}, {Rat(0), make_rat(1, 2)}, {make_rat(1, 2), Rat(0)}};
        for (auto& [l0, m0] : Xs) {
            LatticeShift X{{l0}, {m0}};
            for (int la = -1; la <= 1; ++la)
                for (int mb = -1; mb <= 1; ++mb) {
                    LatticeShift Xp{{Rat(la)}, {Rat(mb)}};
                    for (int l : {0, 1}) {
                        QSeries lhs =
                            g_taylor(f1, X + Xp, {l}, Rat(T + 1)) * (rho_factor(M, Xp) * zeta_factor(M, Xp, X));
                        QSeries rhs = g_taylor(f1, X, {l}, Rat(T + 1));
                        Rat ord = std::min(lhs.trunc(), rhs.trunc());
                        if (!lhs.equal_up_to(rhs, ord))
                            return verdict(false, "X=(" + rat_str(l0) + "," + rat_str(m0) + ") X'=(" +
                                                      std::to_string(la) + "," + std::to_string(mb) + ")");
                    }
                }
        }
        return verdict(true, "entries in {-1,0,1}, l <= 1");
    });
    ck.run("derivation-of-coefficients", "depth structure of Taylor coefficients", [T] {
        struct Case {
            QJContext ctx;
            int l;
        };
        std::vector<Case> cases{{context_E2(), 0}, {context_E2(), 2}, {context_Theta(), 3}, {context_Theta(), 5}};
        for (auto& c : cases) {
            int w = c.ctx.weight + c.l;
            QSeries g = g_taylor(c.ctx, LatticeShift::zero(1), {c.l}, Rat(30));
            Certificate cert = certify(g, w, 1, w / 2, 8, "g");
            if (!cert.ok()) return verdict(false, "coefficient not quasimodular");
            QMPoly poly = qmpoly_from_certificate(cert);
            QMPoly d = poly;
            for (int r = 1; r <= 2; ++r) {
                d = d.delta_tau();
                QSeries rhs(Rat(T + 1));
                for (int s = 0; s <= r; ++s) {
                    QSeries t = g_rs(c.ctx, LatticeShift::zero(1), {c.l}, r - s, s, Rat(T + 1));
                    rhs = rhs + t * (Rat(factorial(r)) / Rat(factorial(r - s)));
                }
                if (!d.expand(Rat(T + 1)).equal_up_to(rhs, Rat(T + 1)))
                    return verdict(false, "r=" + std::to_string(r));
            }
        }
        return verdict(true, "r <= 2 on two contexts");
    });
    ck.run("xi-hk-bridge", "projected weight-4 element and the xi-combination are both modular", [] {
        QSeries h4 = qbracket(h_poly(4).dropped_weight1().to_partition_function(), 15);
        Certificate c = certify(h4, 4, 1, 0, 10, "h4");
        if (!c.ok()) return verdict(false, "h4 not modular");
        QJContext f1 = context_F1();
        QSeries xi3 = xi_comb(f1, LatticeShift::zero(1), {3}, false, Rat(9));
        Certificate c2 = certify(xi3, 4, 1, 0, 4, "xi3");
        if (!c2.ok()) return verdict(false, "xi_3 not modular");
        return verdict(true, "both in span{G4}");
    });
}

// ---- level-N -----------------------------------------------------------------------

void suite_level_n(Checker& ck, const SuiteOptions& opt) {
    ck.run("levelN-certify", "torsion-shifted pair products against heuristic spans", [&opt] {
        struct Target {
            long long N;
            std::vector<std::pair<int, Rat>> factors;
        };
        std::vector<Target> targets{
            {2, {{1, make_rat(1, 2)}, {1, make_rat(1, 2)}}},
            {2, {{2, make_rat(1, 2)}, {2, make_rat(1, 2)}}},
            {2, {{1, make_rat(1, 2)}, {3, make_rat(1, 2)}}},
            {2, {{3, make_rat(1, 2)}, {3, make_rat(1, 2)}}},
            {3, {{1, make_rat(1, 3)}, {1, make_rat(2, 3)}}},
            {3, {{2, make_rat(1, 3)}, {2, make_rat(2, 3)}}},
            {3, {{1, make_rat(1, 3)}, {1, make_rat(1, 3)}, {1, make_rat(1, 3)}}},
            {3, {{3, make_rat(1, 3)}, {3, make_rat(2, 3)}}},
        };
        int certified = 0, inconclusive = 0;
        std::ostringstream os;
        for (auto& t : targets) {
            int w = 0;
            PartitionFunction f = PartitionFunction::one();
            for (auto& [k, a] : t.factors) {
                w += k;
                f = f * pf_Q(k, a);
            }
            long long margin = std::min<long long>(opt.margin, 6);
            auto span = spanning_set(t.N, w, w / 2, Rat(2));
            long long B = (long long)span.size();
            long long T = B + margin + 2;
            QSeries target = qbracket(f, T);
            Certificate c = certify(target, w, t.N, w / 2, margin, f.name());
            if (c.status == Certificate::Status::failed) return verdict(false, f.name());
            (c.ok() ? certified : inconclusive)++;
        }
        os << certified << " certified, " << inconclusive << " inconclusive";
        return verdict(true, os.str());
    });
    ck.run("levelN-klein-ratio", "ratio by the weight-1 bracket is a power series", [] {
        struct Target {
            long long N;
            std::vector<std::pair<int, Rat>> factors;
            Rat a_total;
        };
        std::vector<Target> targets{
            {2, {{2, make_rat(1, 2)}}, make_rat(1, 2)},
            {3, {{2, make_rat(1, 3)}}, make_rat(1, 3)},
            {3, {{1, make_rat(1, 3)}, {2, make_rat(1, 3)}}, make_rat(2, 3)},
            {2, {{1, make_rat(1, 2)}, {2, make_rat(1, 2)}, {1, make_rat(1, 2)}}, make_rat(3, 2)},
        };
        for (auto& t : targets) {
            PartitionFunction f = PartitionFunction::one();
            for (auto& [k, a] : t.factors) f = f * pf_Q(k, a);
            QSeries numer = qbracket(f, 7);
            QSeries denom = qbracket(pf_Q(1, t.a_total), 7);
            QSeries ratio = numer * denom.inverse();
            if (ratio.floor_exp() < 0) return verdict(false, "pole in " + f.name());
            for (auto& [e, c] : ratio.terms()) {
                if (e >= Rat(6)) break;
                if ((2 * t.N) % c.reduced().modulus() != 0) return verdict(false, "coefficient field too big");
            }
        }
        return verdict(true, "no pole, coefficients in the 2N-th cyclotomic field, to q^6");
    });
}

// ---- projections -----------------------------------------------------------------

void suite_projections(Checker& ck, const SuiteOptions& opt) {
    ck.run("proj-hk-modular", "corrected generators have modular brackets", [&opt] {
        for (int k : {4, 6, 8}) {
            long long T = (long long)spanning_set(1, k, 0, Rat(1)).size() + opt.margin + 1;
            QSeries hk = qbracket(h_poly(k).dropped_weight1().to_partition_function(), T);
            Certificate c = certify(hk, k, 1, 0, opt.margin, "h" + std::to_string(k));
            if (!c.ok()) return verdict(false, "k=" + std::to_string(k));
        }
        return verdict(true, "k in {4,6,8} at depth 0");
    });
    ck.run("proj-kills-q2", "projection annihilates weight-2 multiples", [] {
        FormalPoly q2 = FormalPoly::symbol(2);
        for (auto f : {q2, q2 * q2, q2 * FormalPoly::symbol(4), q2 * FormalPoly::symbol(3)}) {
            if (!pi_bo(f).dropped_weight1().is_zero()) return verdict(false, f.str());
        }
        return verdict(true, "in the image algebra");
    });
    ck.run("proj-q2-image-not-modular", "weight-2 multiples never certify at depth 0", [&opt] {
        for (auto f : {pf_Q(2) * pf_Q(2), pf_Q(2) * pf_Q(4)}) {
            int w = f.weight();
            long long T = (long long)spanning_set(1, w, 0, Rat(1)).size() + opt.margin + 1;
            Certificate c = certify(qbracket(f, T), w, 1, 0, opt.margin, f.name());
            if (c.status != Certificate::Status::failed) return verdict(false, f.name());
        }
        return verdict(true, "certification fails as required");
    });
    ck.run("proj-idempotent-sample", "projection is idempotent with certified modular brackets", [&opt] {
        std::vector<FormalPoly> sample{FormalPoly::symbol(4), FormalPoly::symbol(6),
                                       FormalPoly::symbol(3) * FormalPoly::symbol(3),
                                       FormalPoly::symbol(5) * FormalPoly::symbol(3)};
        for (auto& f : sample) {
            FormalPoly p = pi_bo(f);
            if (!(pi_bo(p).dropped_weight1() == p.dropped_weight1())) return verdict(false, "not idempotent");
            int wi = (int)to_ll(num(f.weight()));
            long long T = (long long)spanning_set(1, wi, 0, Rat(1)).size() + opt.margin + 1;
            QSeries s = qbracket(p.dropped_weight1().to_partition_function(), T);
            Certificate c = certify(s, wi, 1, 0, opt.margin, "pi");
            if (!c.ok()) return verdict(false, "bracket not modular");
        }
        return verdict(true, "generator sample");
    });
    ck.run("proj-splitting", "decomposition along powers of the weight-2 element", [] {
        FormalPoly f = FormalPoly::symbol(4) * FormalPoly::symbol(2) + FormalPoly::symbol(6);
        FormalPoly rest = f;
        FormalPoly recombined;
        FormalPoly q2pow = FormalPoly::constant(CycQ::one());
        for (int i = 0; i < 6 && !rest.is_zero(); ++i) {
            FormalPoly gi = pi_bo(rest);
            recombined += q2pow * gi;
            FormalPoly diff = (rest - gi).dropped_weight1();
            if (diff.is_zero())
                rest = FormalPoly();
            else
                rest = diff.divided_by_q2();
            q2pow = q2pow * FormalPoly::symbol(2);
        }
        QSeries lhs = qbracket(f.dropped_weight1().to_partition_function(), 8);
        QSeries rhs = qbracket(recombined.dropped_weight1().to_partition_function(), 8);
        return verdict(lhs.equal_up_to(rhs, Rat(9)), "reconstructed through the projection image");
    });
    ck.run("proj-closed-form", "substitution identity for the projection", [] {
        for (auto f : {FormalPoly::symbol(4), FormalPoly::symbol(6),
                       FormalPoly::symbol(3) * FormalPoly::symbol(3),
                       FormalPoly::symbol(4) * FormalPoly::symbol(2)}) {
            if (!(pi_closed_form(f).dropped_weight1() == pi_bo(f).dropped_weight1()))
                return verdict(false, f.str());
        }
        return verdict(true, "weights <= 6, in the image algebra");
    });
    ck.run("proj-operator-bracket", "operator identities under the bracket", [] {
        long long T = 5;
        // n = 1, j = 1: the first-order operator shifts the one-point slots by one
        {
            int J = 4;
            JetForm f1 = bo_npoint_bracket(1, J, Rat(T + 1));
            for (int l = 1; l <= J; ++l) {
                QSeries lhs_c = qbracket(pf_Q(l), T);
                QSeries rhs_c = f1.coeff({l - 1});
                if (!lhs_c.equal_up_to(rhs_c, Rat(T + 1))) return verdict(false, "n=1 j=1");
            }
        }
        // n = 2, j = 1, 2 through the formal operators
        {
            int Jw = 3;
            JetForm f2 = bo_npoint_bracket(2, Jw + 1, Rat(T + 1));
            JetForm f1 = bo_npoint_bracket(1, 2 * Jw + 2, Rat(T + 1));
            auto f2c = [&](int a, int b) {
                if (a < -1 || b < -1) return QSeries::zero(Rat(T + 1));
                return f2.coeff({a, b});
            };
            auto joint = [&](int l1, int l2) {
                // coefficient of the combined series at (l1, l2)
                return f1.coeff({l1 + l2 - 1}) * Rat(binomial(l1 + l2, l1));
            };
            for (int j : {1, 2}) {
                for (int l1 = 0; l1 <= Jw; ++l1)
                    for (int l2 = 0; l2 <= Jw; ++l2) {
                        FormalPoly mono = FormalPoly::symbol(l1 + 1) * FormalPoly::symbol(l2 + 1);
                        FormalPoly img = op_D(j, mono);
                        QSeries lhs_c = qbracket(img.dropped_weight1().to_partition_function(), T);
                        // j = 2: the two hyperplane translates combine into the honest
                        // series (z1+z2) F1(z1+z2), with uniform binomial coefficients
                        QSeries rhs_c = j == 1 ? f2c(l1 - 1, l2) + f2c(l1, l2 - 1)
                                               : joint(l1, l2) * Rat(2);
                        if (!lhs_c.equal_up_to(rhs_c, Rat(T + 1)))
                            return verdict(false, "n=2 j=" + std::to_string(j));
                    }
            }
        }
        // level N at a torsion point: j = 1, n = 1 on the shifted family
        {
            Rat a = make_rat(1, 2);
            JetForm f1a = bo_npoint_bracket_shifted({a}, 4, Rat(T + 1));
            for (int l = 1; l <= 4; ++l) {
                QSeries lhs_c = qbracket(pf_Q(l, a), T);
                QSeries rhs_c = f1a.coeff({l - 1});
                if (!lhs_c.equal_up_to(rhs_c, Rat(T + 1))) return verdict(false, "level-2 j=1");
            }
        }
        return verdict(true, "j <= 2, n <= 2, plus a torsion instance");
    });
}

// ---- j-algebra ---------------------------------------------------------------------

void suite_jalgebra(Checker& ck, const SuiteOptions& opt) {
    ck.run("jalg-tables", "derivation tables against exact jets", [] {
        verify_derivation_tables(6, Rat(5));
        return verdict(true, "all entries exact");
    });
    ck.run("jalg-commutators", "commutation relations on random ring elements", [&opt] {
        std::mt19937_64 rng(opt.seed);
        std::vector<JAtom> pool;
        for (IVec arg : {IVec{1, 0}, IVec{0, 1}, IVec{1, 1}}) {
            pool.push_back({JAtom::TH, arg});
            pool.push_back({JAtom::A, arg});
            pool.push_back({JAtom::E2, arg});
            pool.push_back({JAtom::E3, arg});
        }
        pool.push_back({JAtom::GE2, {}});
        pool.push_back({JAtom::G4, {}});
        auto random_poly = [&] {
            JPoly p;
            int monos = 1 + (int)(rng() % 2);
            for (int t = 0; t < monos; ++t) {
                JPoly m = JPoly::constant(Rat(1 + (long long)(rng() % 5)));
                int deg = 1 + (int)(rng() % 3);
                for (int d = 0; d < deg; ++d) {
                    const JAtom& a = pool[rng() % pool.size()];
                    int e = (a.kind == JAtom::TH && rng() % 2 == 0) ? -1 : 1;
                    m = m * JPoly::atom(a.kind, a.arg, e);
                }
                p += m;
            }
            return p;
        };
        auto Dt = [](const JPoly& f) { return apply_D_tau(f); };
        auto dt = [](const JPoly& f) { return apply_delta_tau(f); };
        auto W = [](const JPoly& f) { return apply_W(f); };
        auto comm = [](auto&& A, auto&& B, const JPoly& f) { return A(B(f)) - B(A(f)); };
        for (int trial = 0; trial < 20; ++trial) {
            JPoly f = random_poly();
            if (!(comm(dt, Dt, f) == apply_W(f))) return verdict(false, "[dt,Dt] != W");
            if (!(comm(W, Dt, f) == apply_D_tau(f) * Rat(2))) return verdict(false, "[W,Dt] != 2Dt");
            if (!(comm(W, dt, f) == apply_delta_tau(f) * Rat(-2))) return verdict(false, "[W,dt] != -2dt");
            for (int u = 0; u < 2; ++u) {
                auto Dz = [u](const JPoly& g) { return apply_D_z(g, u); };
                auto dz = [u](const JPoly& g) { return apply_delta_z(g, u); };
                if (!(comm(dz, Dt, f) == apply_D_z(f, u))) return verdict(false, "[dz,Dt] != Dz");
                if (!(comm(dt, Dz, f) == apply_delta_z(f, u))) return verdict(false, "[dt,Dz] != dz");
                if (!(comm(W, Dz, f) == apply_D_z(f, u))) return verdict(false, "[W,Dz] != Dz");
                if (!comm(dt, dz, f).is_zero()) return verdict(false, "[dt,dz] != 0");
                for (int v = 0; v < 2; ++v) {
                    auto Dzv = [v](const JPoly& g) { return apply_D_z(g, v); };
                    auto dzv = [v](const JPoly& g) { return apply_delta_z(g, v); };
                    auto Iop = [u, v](const JPoly& g) { return apply_I(g, u, v); };
                    if (!(comm(dz, Dzv, f) == apply_I(f, u, v) * Rat(2))) return verdict(false, "[dz,Dz] != 2I");
                    if (!comm(Dz, Dzv, f).is_zero()) return verdict(false, "[Dz,Dz] != 0");
                    if (!comm(dz, dzv, f).is_zero()) return verdict(false, "[dz,dz] != 0");
                    if (!comm(Iop, Dzv, f).is_zero()) return verdict(false, "[I,Dz] != 0");
                    if (!comm(Iop, dzv, f).is_zero()) return verdict(false, "[I,dz] != 0");
                    if (!comm(Iop, Dt, f).is_zero()) return verdict(false, "[I,Dt] != 0");
                }
            }
        }
        return verdict(true, "20 samples, rank <= 2, degree <= 3, all listed and unlisted relations");
    });
    ck.run("jalg-npoint-derivations", "transformation data of the symbolic n-point forms", [] {
        JPoly F1sum = JPoly::atom(JAtom::TH, {1, 1}, -1);
        JPoly F2 = (JPoly::atom(JAtom::A, {1, 0}) + JPoly::atom(JAtom::A, {0, 1})) * F1sum;
        if (!apply_delta_tau(JPoly::atom(JAtom::TH, {1, 0}, -1)).is_zero()) return verdict(false, "one-point");
        if (!apply_delta_tau(F2).is_zero()) return verdict(false, "two-point modular side");
        if (!(apply_delta_z(F2, 0) == F1sum)) return verdict(false, "two-point elliptic side");
        if (!(apply_delta_z(F2, 1) == F1sum)) return verdict(false, "two-point symmetry");
        return verdict(true, "");
    });
}

} // namespace

bool SuiteReport::all_ok() const {
    for (auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

json SuiteReport::to_json(bool with_timing) const {
    json arr = json::array();
    for (auto& c : checks) {
        json j{{"name", c.name}, {"anchor", c.anchor}, {"status", c.status}, {"detail", c.detail}};
        if (with_timing) j["seconds"] = c.seconds;
        arr.push_back(j);
    }
    return json{{"suite", suite}, {"seed", seed}, {"checks", arr}, {"ok", all_ok()}};
}

const std::vector<std::string>& suite_names() {
    static std::vector<std::string> names{"bloch-okounkov", "hooks",   "moments",     "double-moments",
                                          "taylor-xi",      "level-N", "projections", "j-algebra"};
    return names;
}

SuiteReport run_suite(const std::string& id, const SuiteOptions& opt) {
    SuiteReport report;
    report.suite = id;
    report.seed = opt.seed;
    Checker ck{&report.checks, opt.parallel, {}};
    if (id == "bloch-okounkov")
        suite_bloch_okounkov(ck, opt);
    else if (id == "hooks")
        suite_hooks(ck, opt);
    else if (id == "moments")
        suite_moments(ck, opt);
    else if (id == "double-moments")
        suite_double_moments(ck, opt);
    else if (id == "taylor-xi")
        suite_taylor_xi(ck, opt);
    else if (id == "level-N")
        suite_level_n(ck, opt);
    else if (id == "projections")
        suite_projections(ck, opt);
    else if (id == "j-algebra")
        suite_jalgebra(ck, opt);
    else
        throw BadParam("unknown suite: " + id);
    ck.finish();
    return report;
}

std::vector<CriterionStatus> run_acceptance(const SuiteOptions& opt, std::vector<SuiteReport>* reports) {
    std::vector<SuiteReport> all;
    for (auto& name : suite_names()) all.push_back(run_suite(name, opt));
    auto find = [&](const std::string& suite, const std::string& check) -> const CheckResult* {
        for (auto& r : all)
            if (r.suite == suite)
                for (auto& c : r.checks)
                    if (c.name == check) return &c;
        return nullptr;
    };
    struct Map {
        int num;
        std::string title;
        std::vector<std::pair<std::string, std::string>> checks;
    };
    std::vector<Map> maps{
        {1, "one-point function jets", {{"bloch-okounkov", "one-point-jets"}}},
        {2, "two-point dual computation", {{"bloch-okounkov", "two-point-dual"}}},
        {3, "level-1 quasimodularity", {{"bloch-okounkov", "level1-quasimodularity"}}},
        {4,
         "modular projections",
         {{"projections", "proj-hk-modular"},
          {"projections", "proj-kills-q2"},
          {"projections", "proj-q2-image-not-modular"}}},
        {5, "torsion-value identity", {{"bloch-okounkov", "klein-forms"}}},
        {6,
         "hook and moment kernels",
         {{"hooks", "hook-weight2"},
          {"hooks", "hook-cmz"},
          {"moments", "moment-onepoint"},
          {"moments", "moment-twopoint"}}},
        {7,
         "double moments",
         {{"double-moments", "dm-kernel"},
          {"double-moments", "dm-projection-values"},
          {"double-moments", "dm-product-rule"}}},
        {8,
         "derivation algebra",
         {{"j-algebra", "jalg-tables"},
          {"j-algebra", "jalg-commutators"},
          {"j-algebra", "jalg-npoint-derivations"}}},
        {9,
         "Taylor-coefficient functional equations",
         {{"taylor-xi", "functional-equation"}, {"taylor-xi", "derivation-of-coefficients"}}},
        {10,
         "higher-level claims",
         {{"level-N", "levelN-certify"}, {"level-N", "levelN-klein-ratio"}}},
    };
    std::vector<CriterionStatus> out;
    for (auto& m : maps) {
        bool ok = true;
        double secs = 0;
        for (auto& [s, c] : m.checks) {
            const CheckResult* r = find(s, c);
            if (!r || !r->ok()) ok = false;
            if (r) secs += r->seconds;
        }
        out.push_back({m.num, m.title, ok, secs});
    }
    if (reports) *reports = std::move(all);
    return out;
}

} // namespace qb
