#include "npoint.hpp"

#include "bracket.hpp"
#include "errors.hpp"

#include <algorithm>
#include <numeric>

namespace qb {

namespace {

// Theta-hat derivative composed at the subset sum s.w; order r >= 1; s may be zero
// (empty sum), in which case the value series at the origin is returned as a constant.
JetForm theta_deriv_composed(const JetForm& theta_single, int r, const IVec& s, const IVec& lo,
                             const IVec& hi) {
    JetForm d = theta_single;
    for (int t = 0; t < r; ++t) d = d.derivative_w(0);
    bool zero = std::all_of(s.begin(), s.end(), [](int v) { return v == 0; });
    if (zero) {
        QSeries v = d.coeff({0});
        int n = (int)s.size();
        JetForm c(n, lo, hi, d.q_trunc());
        if (!v.is_zero()) c.set(IVec(n, 0), v);
        return c;
    }
    // the derivative window label may dip below the true support; the support of
    // every theta derivative is regular
    IVec lo1 = d.lo(), hi1 = d.hi();
    lo1[0] = std::max(lo1[0], 0);
    return compose_linear(d.windowed(lo1, hi1), s, lo, hi);
}

// 1/Theta-hat at the subset sum, as unit-part times the iterated inverse of s.w
JetForm inv_theta_composed(const JetForm& theta_single, const IVec& s, const IVec& lo, const IVec& hi,
                           const Rat& qT) {
    JetForm unit = theta_single.shifted(0, -1); // Theta/w, a unit
    JetForm unit_inv = unit.inverse();
    JetForm comp = compose_linear(unit_inv, s, IVec(s.size(), 0), hi);
    JetForm itp = iterated_inv_power(s, 1, lo, hi, qT);
    return multiply_raw(comp, itp, lo, hi);
}

} // namespace

JetForm bo_npoint_recursive(int n, int J, const Rat& q_trunc, bool* mixed_deep_vanished) {
    if (n < 1) throw BadParam("n-point recursion requires n >= 1");
    if (n > 3) throw RecursionRankUnsupported("recursion path supports n <= 3");
    // uniform work box; margins absorb the iterated-Laurent depth (validated by the
    // window-stability and bracket cross-checks in the test suite)
    int LO = (n == 2) ? -(J + 4) : -(2 * J + 6);
    int HI = (n == 2) ? 2 * J + 4 : 4 * J + 6;
    if (n == 1) {
        LO = -2;
        HI = J + 2;
    }
    IVec lo(n, LO), hi(n, HI);
    int single_hi = n * HI + 4;
    JetForm theta_single = theta_hat_jet(single_hi, q_trunc);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    JetForm total(n, lo, hi, q_trunc);
    do {
        std::vector<JetForm> V;
        V.push_back(JetForm::constant(n, QSeries::constant(CycQ::one(), q_trunc), lo, hi));
        for (int m = 1; m <= n; ++m) {
            JetForm num(n, lo, hi, q_trunc);
            for (int r = 0; r < m; ++r) {
                IVec s(n, 0);
                for (int t = 0; t < r; ++t) s[perm[t]] = 1;
                JetForm th = theta_deriv_composed(theta_single, m - r, s, lo, hi);
                Rat c = Rat(1) / Rat(factorial(m - r));
                if ((m - r) % 2 == 1) c = -c;
                num = num + multiply_raw(th, V[r], lo, hi) * CycQ(c);
            }
            IVec sm(n, 0);
            for (int t = 0; t < m; ++t) sm[perm[t]] = 1;
            V.push_back(multiply_raw(-num, inv_theta_composed(theta_single, sm, lo, hi, q_trunc), lo, hi));
        }
        total = total + V[n];
    } while (std::next_permutation(perm.begin(), perm.end()));

    // coefficients near the raw-convolution box edge are incomplete by construction;
    // the cancellation claim is asserted on the exact shell two steps beyond the
    // honest pole bound
    bool clean = true;
    for (auto& [l, c] : total.coeffs()) {
        bool in_shell = true, inside = true;
        for (int i = 0; i < n; ++i) {
            in_shell = in_shell && l[i] >= -3 && l[i] <= J;
            inside = inside && l[i] >= -1 && l[i] <= J;
        }
        if (in_shell && !inside && !c.is_zero()) clean = false;
    }
    if (mixed_deep_vanished) *mixed_deep_vanished = clean;
    JetForm out = reboxed_window(total, IVec(n, -1), IVec(n, J));
    out.weight = n;
    out.index.assign(n, std::vector<Rat>(n, make_rat(-1, 2)));
    return out;
}

JetForm bo_npoint_bracket(int n, int J, const Rat& q_trunc) {
    return bo_npoint_bracket_shifted(std::vector<Rat>(n, Rat(0)), J, q_trunc);
}

JetForm bo_npoint_bracket_shifted(const std::vector<Rat>& a, int J, const Rat& q_trunc) {
    int n = (int)a.size();
    long long T = to_ll(rat_floor(q_trunc - Rat(1)));
    JetForm numer(n, IVec(n, -1), IVec(n, J), q_trunc);
    // per-variable tables of Q_k(., a_i) evaluators, k = 0..J+1
    std::vector<std::vector<PartitionFunction>> fam(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= J + 1; ++k) fam[i].push_back(pf_Q(k, a[i]));
    enumerate_partitions(T, [&](const Partition& p) {
        std::vector<std::vector<CycQ>> vals(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k <= J + 1; ++k) vals[i].push_back(fam[i][k](p));
        IVec l(n, -1);
        while (true) {
            CycQ prod = CycQ::one();
            for (int i = 0; i < n; ++i) prod *= vals[i][l[i] + 1];
            numer.add_to(l, QSeries::monomial(Rat(p.size()), prod, q_trunc));
            int i = 0;
            while (i < n) {
                if (++l[i] <= J) break;
                l[i] = -1;
                ++i;
            }
            if (i == n) break;
        }
    });
    JetForm out = numer * euler_product(q_trunc);
    out.weight = n;
    return out;
}

JetForm s_npoint_kernel(int n, int J, const Rat& q_trunc) {
    if (n == 1) {
        JetForm e2 = e_hat_jet(2, J, q_trunc);
        return (e2 + reflected(e2, 0)) * CycQ(make_rat(1, 4));
    }
    if (n != 2) throw BadParam("s_npoint_kernel implemented for n <= 2");
    // each set-partition block carries its own 1/2^(|A|+1); the n = 1 case and the
    // polar slots pin this normalization exactly
    IVec lo{-2, -2}, hi{J, J};
    JetForm e2 = e_hat_jet(2, J, q_trunc);
    JetForm e2even = e2 + reflected(e2, 0);
    JetForm part1 = multiply_raw(embed_axis(e2even, 0, 2, {-2, 0}, {J, 0}),
                                 embed_axis(e2even, 1, 2, {0, -2}, {0, J}), lo, hi);
    // pair block: D_tau of the weight-2 kernel at the four sign choices; the q-derivative
    // kills the q^0 diagonal part, so every term composes as a regular jet
    JetForm de2 = e_hat_jet(2, 2 * J + 2, q_trunc).derivative_q();
    de2 = de2.windowed({0}, {2 * J + 2});
    JetForm part2(2, lo, hi, q_trunc);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) part2 = part2 + reboxed_window(compose_linear(de2, {s1, s2}, IVec(2, 0), hi), lo, hi);
    return part1 * CycQ(make_rat(1, 16)) + part2 * CycQ(make_rat(1, 8));
}

JetForm s_npoint_bracket(int n, int J, const Rat& q_trunc) {
    long long T = to_ll(rat_floor(q_trunc - Rat(1)));
    JetForm numer(n, IVec(n, -2), IVec(n, J), q_trunc);
    // the kernel collects the symmetrized moment family: odd slots vanish
    // (the odd sums cancel in the a = 0 symmetrization)
    std::vector<PartitionFunction> fam;
    for (int k = 2; k <= J + 2; ++k) fam.push_back(pf_S(k));
    enumerate_partitions(T, [&](const Partition& p) {
        std::vector<CycQ> vals; // index by slot l in [-2, J]
        vals.push_back(CycQ(make_rat(1, 2))); // slot -2
        vals.push_back(CycQ::zero());         // slot -1
        for (int l = 0; l <= J; ++l)
            vals.push_back(l % 2 == 0 ? fam[l](p) * (Rat(1) / Rat(factorial(l))) : CycQ::zero());
        IVec l(n, -2);
        while (true) {
            CycQ prod = CycQ::one();
            for (int i = 0; i < n; ++i) prod *= vals[l[i] + 2];
            if (!prod.is_zero()) numer.add_to(l, QSeries::monomial(Rat(p.size()), prod, q_trunc));
            int i = 0;
            while (i < n) {
                if (++l[i] <= J) break;
                l[i] = -2;
                ++i;
            }
            if (i == n) break;
        }
    });
    return numer * euler_product(q_trunc);
}

JetForm t_npoint_kernel(int n, int J, const Rat& q_trunc) {
    int rank = 2 * n;
    IVec lo(rank, -1), hi(rank, J);
    JetForm out = JetForm::constant(rank, QSeries::constant(CycQ::one(), q_trunc), lo, hi);
    JetForm th = theta_hat_jet(2 * J + 4, q_trunc);
    JetForm thinv = theta_hat_inv_jet(J + 1, q_trunc);
    for (int i = 0; i < n; ++i) {
        IVec s(rank, 0);
        s[2 * i] = 1;
        s[2 * i + 1] = 1;
        IVec clo(rank, 0), chi(rank, 0);
        chi[2 * i] = J + 1;
        chi[2 * i + 1] = J + 1;
        JetForm num = compose_linear(th, s, clo, chi);
        IVec alo(rank, 0), ahi(rank, 0);
        alo[2 * i] = -1;
        ahi[2 * i] = J + 1;
        JetForm f1 = embed_axis(thinv, 2 * i, rank, alo, ahi);
        alo = IVec(rank, 0);
        ahi = IVec(rank, 0);
        alo[2 * i + 1] = -1;
        ahi[2 * i + 1] = J + 1;
        JetForm f2 = embed_axis(thinv, 2 * i + 1, rank, alo, ahi);
        IVec mid_lo(rank, -1), mid_hi(rank, J + 1);
        JetForm factor = multiply_raw(multiply_raw(num, f1, mid_lo, mid_hi), f2, lo, hi);
        out = multiply_raw(out, factor * CycQ(make_rat(-1, 2)), lo, hi);
    }
    out.weight = n;
    out.index.assign(rank, std::vector<Rat>(rank, Rat(0)));
    for (int i = 0; i < n; ++i) {
        out.index[2 * i][2 * i + 1] = make_rat(1, 2);
        out.index[2 * i + 1][2 * i] = make_rat(1, 2);
    }
    return out;
}

JetForm t_onepoint_bracket(int J, const Rat& q_trunc) {
    long long T = to_ll(rat_floor(q_trunc - Rat(1)));
    JetForm numer(2, IVec(2, -1), IVec(2, J), q_trunc);
    std::vector<std::vector<PartitionFunction>> fam((size_t)J + 1);
    for (int k = 0; k <= J; ++k)
        for (int m = 0; m <= J; ++m) fam[k].push_back(pf_T_unshifted(k, m + 1));
    enumerate_partitions(T, [&](const Partition& p) {
        // slots: (-1,0) and (0,-1) carry the constant -1/2; (k,m) carries T_{k,m+1}/(k! m!)
        numer.add_to({-1, 0}, QSeries::monomial(Rat(p.size()), CycQ(make_rat(-1, 2)), q_trunc));
        numer.add_to({0, -1}, QSeries::monomial(Rat(p.size()), CycQ(make_rat(-1, 2)), q_trunc));
        for (int k = 0; k <= J; ++k)
            for (int m = 0; m <= J; ++m) {
                if ((k + m + 1) % 2 != 0) continue;
                CycQ v = fam[k][m](p) * (Rat(1) / Rat(factorial(k) * factorial(m)));
                if (!v.is_zero()) numer.add_to({k, m}, QSeries::monomial(Rat(p.size()), v, q_trunc));
            }
    });
    return numer * euler_product(q_trunc);
}

// ---- contexts ----------------------------------------------------------------

QJContext context_F1() {
    QJContext ctx;
    ctx.rank = 1;
    ctx.weight = 1;
    ctx.index = {{make_rat(-1, 2)}};
    RatMat M = ctx.index;
    ctx.family[{0, {0}}] = [M](const LatticeShift& X, int hi, const Rat& qT) {
        // reduce lambda into [0,1): Theta(u + j tau) = (-1)^j e(-j mu) q^(-j l0 - j^2/2) e^(-jw) Theta(u + l0 tau)
        Rat l = X.lambda[0], m = X.mu[0];
        Rat l0 = mod1(l);
        Int j = rat_floor(l);
        bool lattice = (l0 == 0) && is_integer(m);
        JetForm th = theta_hat_translated(l0, m, hi + (lattice ? 3 : 1), qT + Rat(2));
        if (j != 0) {
            Rat jr(j);
            CycQ c = CycQ::root_of_unity(-jr * m) * Rat((j % 2 == 0) ? 1 : -1);
            th = th.times_exp(0, -jr, c);
            JetForm sh(th.rank(), th.lo(), th.hi(), th.q_trunc() - jr * l0 - jr * jr / Rat(2));
            for (auto& [lv, cc] : th.coeffs()) sh.set(lv, cc.shifted(-jr * l0 - jr * jr / Rat(2)));
            th = std::move(sh);
        }
        JetForm inv = th.inverse().windowed({lattice ? -1 : 0}, {hi});
        return apply_slash_prefactors(inv, X, M).q_truncated(qT);
    };
    return ctx;
}

QJContext context_E2() {
    QJContext ctx;
    ctx.rank = 1;
    ctx.weight = 2;
    ctx.index = {{Rat(0)}};
    ctx.family[{0, {0}}] = [](const LatticeShift& X, int hi, const Rat& qT) {
        // index 0: slash is plain translation
        return e2_hat_translated(X.lambda[0], X.mu[0], hi, qT);
    };
    ctx.family[{1, {0}}] = [](const LatticeShift& X, int hi, const Rat& qT) {
        (void)X;
        return JetForm::constant(1, QSeries::constant(CycQ(Rat(-1)), qT), {-2}, {hi});
    };
    return ctx;
}

QJContext context_Theta() {
    QJContext ctx;
    ctx.rank = 1;
    ctx.weight = -1;
    ctx.index = {{make_rat(1, 2)}};
    RatMat M = ctx.index;
    ctx.family[{0, {0}}] = [M](const LatticeShift& X, int hi, const Rat& qT) {
        Rat l = X.lambda[0], m = X.mu[0];
        Rat l0 = mod1(l);
        Int j = rat_floor(l);
        JetForm th = theta_hat_translated(l0, m, hi, qT + Rat(2));
        if (j != 0) {
            Rat jr(j);
            CycQ c = CycQ::root_of_unity(-jr * m) * Rat((j % 2 == 0) ? 1 : -1);
            th = th.times_exp(0, -jr, c);
            JetForm sh(th.rank(), th.lo(), th.hi(), th.q_trunc() - jr * l0 - jr * jr / Rat(2));
            for (auto& [lv, cc] : th.coeffs()) sh.set(lv, cc.shifted(-jr * l0 - jr * jr / Rat(2)));
            th = std::move(sh);
        }
        return apply_slash_prefactors(th, X, M).q_truncated(qT);
    };
    return ctx;
}

JetForm double_slash(const QJContext& ctx, const LatticeShift& X, int hi, const Rat& q_trunc) {
    return double_slash_member(ctx, 0, IVec(ctx.rank, 0), X, hi, q_trunc);
}

JetForm double_slash_member(const QJContext& ctx, int i, const IVec& j, const LatticeShift& X, int hi,
                            const Rat& q_trunc) {
    // rho(-X) always enters through the reciprocal of rho(X)
    CycQ rho_inv = rho_factor(ctx.index, X).inverse();
    std::optional<JetForm> acc;
    for (auto& [key, builder] : ctx.family) {
        if (key.first != i) continue;
        const IVec& jj = key.second;
        bool geq = true;
        for (int t = 0; t < ctx.rank; ++t) geq = geq && jj[t] >= j[t];
        if (!geq) continue;
        Rat mult(1);
        for (int t = 0; t < ctx.rank; ++t) {
            int d = jj[t] - j[t];
            mult *= Rat(binomial(jj[t], j[t]));
            Rat pw(1);
            for (int u = 0; u < d; ++u) pw *= X.lambda[t];
            mult *= pw;
        }
        if (mult == 0) continue;
        JetForm term = builder(X, hi, q_trunc) * CycQ(mult);
        acc = acc ? (*acc + term) : term;
    }
    if (!acc) throw BadParam("family member absent from the context");
    return *acc * rho_inv;
}

QSeries g_taylor(const QJContext& ctx, const LatticeShift& X, const IVec& l, const Rat& q_trunc) {
    int hi = 0;
    for (int t = 0; t < ctx.rank; ++t) hi = std::max(hi, l[t] + 1);
    JetForm ds = double_slash(ctx, X, hi, q_trunc);
    return ds.coeff(l);
}

QSeries g_rs(const QJContext& ctx, const LatticeShift& X, const IVec& l, int r, int s, const Rat& q_trunc) {
    if (r == 0 && s == 0) return g_taylor(ctx, X, l, q_trunc);
    int hi = 2 * r + s + 1;
    for (int t = 0; t < ctx.rank; ++t) hi = std::max(hi, l[t] + 2 * r + s + 1);
    // sum over i + |j| = s of (phi_{i,j} || X) w^j, then the B(w,w)^r factor
    JetForm acc(ctx.rank, IVec(ctx.rank, -hi), IVec(ctx.rank, hi), q_trunc);
    bool found_any = false;
    std::function<void(IVec&, int, int)> loop = [&](IVec& j, int pos, int rem) {
        if (pos == ctx.rank) {
            int i = rem;
            bool have = false;
            for (auto& [key, b] : ctx.family) {
                (void)b;
                if (key.first != i) continue;
                bool geq = true;
                for (int t = 0; t < ctx.rank; ++t) geq = geq && key.second[t] >= j[t];
                if (geq) have = true;
            }
            if (!have) return;
            JetForm term = double_slash_member(ctx, i, j, X, hi, q_trunc);
            for (int t = 0; t < ctx.rank; ++t)
                for (int u = 0; u < j[t]; ++u) term = term.shifted(t, 1);
            acc = acc + reboxed_window(term, acc.lo(), acc.hi());
            found_any = true;
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            j[pos] = v;
            loop(j, pos + 1, rem - v);
        }
        j[pos] = 0;
    };
    IVec j(ctx.rank, 0);
    loop(j, 0, s);
    if (!found_any && s > 0) return QSeries::zero(q_trunc);
    // multiply by B_M(w,w)^r
    JetForm out = acc;
    for (int t = 0; t < r; ++t) {
        JetForm bpoly(ctx.rank, IVec(ctx.rank, 0), IVec(ctx.rank, 2), q_trunc);
        for (int u = 0; u < ctx.rank; ++u)
            for (int v = 0; v < ctx.rank; ++v) {
                if (ctx.index.empty() || ctx.index[u][v] == 0) continue;
                IVec e(ctx.rank, 0);
                e[u] += 1;
                e[v] += 1;
                bpoly.add_to(e, QSeries::constant(CycQ(ctx.index[u][v]), q_trunc));
            }
        out = multiply_raw(out, bpoly, acc.lo(), acc.hi());
    }
    return out.coeff(l);
}

QSeries xi_comb(const QJContext& ctx, const LatticeShift& X, const IVec& l, bool use_e2_variant,
                const Rat& q_trunc) {
    int K = ctx.weight;
    for (int t = 0; t < ctx.rank; ++t) K += l[t];
    if (K < 0) throw BadParam("xi requires nonnegative total weight");
    int rmax = K / 2;
    QSeries e2 = e2_series(q_trunc);
    if (!use_e2_variant && K == 2) {
        QSeries g = g_taylor(ctx, X, l, q_trunc);
        return g - e2 * (g_rs(ctx, X, l, 1, 0, q_trunc) + g_rs(ctx, X, l, 0, 1, q_trunc));
    }
    QSeries acc(q_trunc);
    for (int r = 0; r <= rmax; ++r) {
        for (int s = 0; s <= r; ++s) {
            QSeries g = g_rs(ctx, X, l, r - s, s, q_trunc);
            // variant operator: D - e2/2 (pinned by the half-integer telescoping;
            // the weight-2 bracket multiplier carries the same constant)
            for (int t = 0; t < r; ++t)
                g = use_e2_variant ? (g.derivative_qdq() - e2 * g * make_rat(1, 2)) : g.derivative_qdq();
            Rat denom;
            if (use_e2_variant)
                denom = pochhammer(Rat(K) - Rat(r) - make_rat(3, 2), r) * Rat(factorial(r - s));
            else {
                Rat p = pochhammer(Rat(K - r - 1), r);
                if (p == 0) throw PochhammerZero("degenerate weight for the integer-Pochhammer branch");
                denom = p * Rat(factorial(r - s));
            }
            QSeries term = g * (Rat(1) / denom);
            if (r % 2 == 1) term = -term;
            acc = acc + term;
        }
    }
    return acc;
}

} // namespace qb
