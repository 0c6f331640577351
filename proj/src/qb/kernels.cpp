#include "kernels.hpp"

#include "bracket.hpp"
#include "errors.hpp"

namespace qb {

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

QSeries eisenstein_G(int k, const Rat& trunc) {
    if (k < 2 || k % 2 != 0) throw BadParam("G_k requires even k >= 2");
    QSeries s(trunc);
    s.set(Rat(0), CycQ(-bernoulli(k) / Rat(2 * k)));
    for (long long n = 1; Rat(n) < trunc; ++n) {
        Rat sigma(0);
        for (long long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            Rat pw(1);
            for (int t = 0; t < k - 1; ++t) pw *= Rat(d);
            sigma += pw;
        }
        s.set(Rat(n), CycQ(sigma));
    }
    return s;
}

QSeries e2_series(const Rat& trunc) { return eisenstein_G(2, trunc) * Rat(-2); }

QSeries g_hat_series(int k, const Rat& trunc) {
    return eisenstein_G(k, trunc) * (Rat(2) / Rat(factorial(k - 1)));
}

QSeries theta_deriv0_series(const Rat& trunc) {
    QSeries s(trunc);
    for (long long t = 0;; ++t) { // nu = t + 1/2 paired with -nu
        Rat nu = Rat(t) + make_rat(1, 2);
        Rat e = nu * nu / Rat(2);
        if (e >= trunc) break;
        s.add_to(e, CycQ(nu * Rat(t % 2 == 0 ? 2 : -2)));
    }
    return s;
}

JetForm wseries_to_jet(const QSeries& ws, int lo, int hi, const Rat& q_trunc) {
    JetForm j(1, {lo}, {hi}, q_trunc);
    for (auto& [e, c] : ws.terms()) {
        if (!is_integer(e)) throw BadParam("w-series with fractional exponent");
        long long k = to_ll(num(e));
        if (k < lo || k > hi) continue;
        j.set({(int)k}, QSeries::constant(c, q_trunc));
    }
    return j;
}

JetForm theta_hat_jet(int hi, const Rat& q_trunc) {
    JetForm expo(1, {0}, {hi}, q_trunc); // -sum g_{2m} w^{2m} / (2m)
    for (int m = 1; 2 * m <= hi; ++m)
        expo.set({2 * m}, g_hat_series(2 * m, q_trunc) * make_rat(-1, 2 * m));
    JetForm acc = JetForm::constant(1, QSeries::constant(CycQ::one(), q_trunc), {0}, {hi});
    JetForm pw = acc;
    Rat fact(1);
    for (int j = 1; 2 * j <= hi; ++j) {
        pw = pw * expo;
        fact *= Rat(j);
        acc = acc + pw * CycQ(Rat(1) / fact);
    }
    JetForm th = acc.shifted(0, 1);
    th.tag_jacobi(-1, {{make_rat(1, 2)}});
    return th;
}

JetForm theta_hat_inv_jet(int hi, const Rat& q_trunc) {
    JetForm inv = theta_hat_jet(hi + 2, q_trunc).inverse();
    inv.tag_jacobi(1, {{make_rat(-1, 2)}});
    return inv.windowed({-1}, {hi});
}

JetForm a_hat_jet(int hi, const Rat& q_trunc) {
    JetForm j(1, {-1}, {hi}, q_trunc);
    j.set({-1}, QSeries::constant(CycQ::one(), q_trunc));
    for (int m = 1; 2 * m - 1 <= hi; ++m) j.set({2 * m - 1}, -g_hat_series(2 * m, q_trunc));
    j.weight = 1;
    return j;
}

JetForm e_hat_jet(int k, int hi, const Rat& q_trunc) {
    if (k < 1) throw BadParam("E_k requires k >= 1");
    JetForm j(1, {-k}, {hi}, q_trunc);
    j.set({-k}, QSeries::constant(CycQ::one(), q_trunc));
    int sign = (k % 2 == 0) ? 1 : -1;
    for (int m = std::max(1, (k + 1) / 2); 2 * m - k <= hi; ++m) {
        QSeries c = g_hat_series(2 * m, q_trunc) * (Rat(binomial(2 * m - 1, k - 1)) * Rat(sign));
        j.add_to({2 * m - k}, c);
    }
    j.weight = k;
    return j;
}

JetForm wp_hat_jet(int hi, const Rat& q_trunc) {
    JetForm j = e_hat_jet(2, hi, q_trunc);
    j.add_to({0}, -g_hat_series(2, q_trunc));
    return j;
}

FourierForm theta_fourier(const Rat& q_trunc) {
    Rat window = make_rat(1, 2);
    while (window * window / Rat(2) < q_trunc) window += 1;
    FourierForm f(1, window, q_trunc);
    f.index = {{make_rat(1, 2)}};
    f.weight = -1;
    for (long long t = 0;; ++t) {
        Rat nu = Rat(t) + make_rat(1, 2);
        Rat e = nu * nu / Rat(2);
        if (e >= q_trunc) break;
        CycQ c(Rat(t % 2 == 0 ? 1 : -1));
        f.set({nu}, QSeries::monomial(e, c, q_trunc));
        f.set({-nu}, QSeries::monomial(e, -c, q_trunc));
    }
    return f;
}

FourierForm a_hat_fourier(const Rat& q_trunc, int polar_hi) {
    long long whi = 1;
    while (Rat(whi) < q_trunc) ++whi; // q^(nr) with n >= 1 caps the useful r
    FourierForm f(1, Rat(whi), q_trunc);
    f.weight = 1;
    for (long long r = 1; r <= whi; ++r) {
        QSeries qr(q_trunc);
        for (long long n = 1; Rat(n * r) < q_trunc; ++n) qr.add_to(Rat(n * r), CycQ(Rat(-1)));
        if (qr.is_zero()) continue;
        f.add_to({Rat(r)}, qr);
        f.add_to({Rat(-r)}, -qr);
    }
    // (1/2)(e^w + 1)/(e^w - 1): the exact q^0 elliptic part
    QSeries ew = exp_series(Rat(1), Rat(polar_hi + 3));
    QSeries one = QSeries::constant(CycQ::one(), Rat(polar_hi + 3));
    QSeries coth_half = (ew + one) * (ew - one).inverse() * make_rat(1, 2);
    f.polar_jet = wseries_to_jet(coth_half, -1, polar_hi, q_trunc);
    return f;
}

FourierForm e2_hat_fourier(const Rat& q_trunc, int polar_hi) {
    long long whi = 1;
    while (Rat(whi) < q_trunc) ++whi;
    FourierForm f(1, Rat(whi), q_trunc);
    f.weight = 2;
    for (long long r = 1; r <= whi; ++r) {
        QSeries qr(q_trunc);
        for (long long m = 1; Rat(m * r) < q_trunc; ++m) qr.add_to(Rat(m * r), CycQ(Rat(r)));
        if (qr.is_zero()) continue;
        f.add_to({Rat(r)}, qr);
        f.add_to({Rat(-r)}, qr);
    }
    // e^w/(e^w - 1)^2
    QSeries ew = exp_series(Rat(1), Rat(polar_hi + 4));
    QSeries one = QSeries::constant(CycQ::one(), Rat(polar_hi + 4));
    QSeries pol = ew * ((ew - one) * (ew - one)).inverse();
    f.polar_jet = wseries_to_jet(pol, -2, polar_hi, q_trunc);
    return f;
}

namespace {

// 1 - c q^s e^(aw) on [0, hi]
JetForm one_minus_exp(const CycQ& c, const Rat& s, const Rat& a, int hi, const Rat& q_trunc) {
    JetForm j(1, {0}, {hi}, q_trunc);
    Rat pw(1);
    Int fact(1);
    for (int k = 0; k <= hi; ++k) {
        if (k > 0) {
            pw *= a;
            fact *= k;
        }
        QSeries t = QSeries::monomial(s, c * (-pw / Rat(fact)), q_trunc);
        if (k == 0) t = t + QSeries::constant(CycQ::one(), q_trunc);
        j.set({k}, t);
    }
    return j;
}

// c q^s e^(aw) on [0, hi]
JetForm exp_monomial(const CycQ& c, const Rat& s, const Rat& a, int hi, const Rat& q_trunc) {
    JetForm j(1, {0}, {hi}, q_trunc);
    Rat pw(1);
    Int fact(1);
    for (int k = 0; k <= hi; ++k) {
        if (k > 0) {
            pw *= a;
            fact *= k;
        }
        j.set({k}, QSeries::monomial(s, c * (pw / Rat(fact)), q_trunc));
    }
    return j;
}

} // namespace

JetForm theta_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc) {
    Rat l = mod1(lambda);
    Rat qt = q_trunc + Rat(1); // headroom: the leading factor carries q^(-l/2)
    // x^(1/2) - x^(-1/2), x = e(mu) q^l e^w
    JetForm acc = exp_monomial(CycQ::root_of_unity(mu / Rat(2)), l / Rat(2), make_rat(1, 2), hi, qt) -
                  exp_monomial(CycQ::root_of_unity(-mu / Rat(2)), -l / Rat(2), make_rat(-1, 2), hi, qt);
    for (long long n = 1; Rat(n) < qt + Rat(2); ++n) {
        if (Rat(n) + l < qt + Rat(1)) // (1 - x q^n)
            acc = acc * one_minus_exp(CycQ::root_of_unity(mu), Rat(n) + l, Rat(1), hi, qt);
        if (Rat(n) - l > 0 && Rat(n) - l < qt + Rat(1)) // (1 - x^-1 q^n)
            acc = acc * one_minus_exp(CycQ::root_of_unity(-mu), Rat(n) - l, Rat(-1), hi, qt);
    }
    QSeries e = euler_product(qt);
    acc = acc * (e * e).inverse();
    RatMat idx{{make_rat(1, 2)}};
    acc.weight = -1;
    acc.index = idx;
    return acc.q_truncated(q_trunc);
}

JetForm a_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc) {
    Rat l = mod1(lambda);
    bool lattice = (l == 0) && is_integer(mu);
    int H = hi + (lattice ? 3 : 1);
    JetForm th = theta_hat_translated(l, mu, H, q_trunc + Rat(1));
    JetForm out = th.derivative_w(0) * th.inverse();
    out.weight = 1;
    out.index.clear();
    return out.windowed({lattice ? -1 : 0}, {hi}).q_truncated(q_trunc);
}

JetForm e2_hat_translated(const Rat& lambda, const Rat& mu, int hi, const Rat& q_trunc) {
    bool lattice = (mod1(lambda) == 0) && is_integer(mu);
    JetForm a = a_hat_translated(lambda, mu, hi + 1, q_trunc);
    JetForm out = -a.derivative_w(0);
    out.weight = 2;
    return out.windowed({lattice ? -2 : 0}, {hi});
}

QSeries theta_hat_at(const Rat& lambda, const Rat& mu, const Rat& trunc) {
    return theta_hat_translated(lambda, mu, 0, trunc).coeff({0});
}

QSeries klein_h(const Rat& u, const Rat& v, const Rat& trunc) {
    Rat um = mod1(u);
    if (um == 0 && is_integer(v)) throw BadParam("h_{u,v} requires (u,v) outside the integer lattice");
    QSeries val = a_hat_translated(um, v, 0, trunc).coeff({0});
    return val + QSeries::constant(CycQ(um), val.trunc());
}

JetForm apply_slash_prefactors(JetForm translated, const LatticeShift& X, const RatMat& M) {
    int n = translated.rank();
    std::vector<Rat> lm(n, Rat(0));
    for (int i = 0; i < n; ++i) lm[i] = X.lambda[i] + X.mu[i];
    CycQ pref = CycQ::root_of_unity(bilinear(M, lm, lm));
    Rat qshift = bilinear(M, X.lambda, X.lambda);
    JetForm out = translated * pref;
    if (!M.empty()) {
        for (int i = 0; i < n; ++i) {
            Rat c(0);
            for (int j = 0; j < n; ++j) c += Rat(2) * X.lambda[j] * M[j][i];
            if (c != 0) out = out.times_exp(i, c);
        }
    }
    if (qshift != 0) {
        JetForm shifted(out.rank(), out.lo(), out.hi(), out.q_trunc() + qshift);
        shifted.weight = out.weight;
        shifted.index = out.index;
        for (auto& [l, cc] : out.coeffs()) shifted.set(l, cc.shifted(qshift));
        out = std::move(shifted);
    }
    return out;
}

} // namespace qb
