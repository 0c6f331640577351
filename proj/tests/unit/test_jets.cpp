#include "qb/kernels.hpp"
#include "qb/npoint.hpp"

#include <doctest.h>

using namespace qb;

TEST_CASE("theta series data") {
    FourierForm th = theta_fourier(Rat(5));
    CHECK(th.coeff({make_rat(1, 2)}) == QSeries::monomial(make_rat(1, 8), CycQ::one(), Rat(5)));
    CHECK(th.coeff({make_rat(-1, 2)}) == QSeries::monomial(make_rat(1, 8), CycQ(Rat(-1)), Rat(5)));

    JetForm jet = theta_hat_jet(5, Rat(5));
    CHECK(jet.coeff({1}).equal_up_to(QSeries::constant(CycQ::one(), Rat(5)), Rat(5)));
    CHECK(jet.coeff({2}).is_zero());

    // triple product at the half point: (e(1/4)-e(-1/4)) prod (1+q^n)^2 (1-q^n)^-2
    QSeries direct = theta_hat_at(Rat(0), make_rat(1, 2), Rat(6));
    QSeries expect = QSeries::constant(CycQ::root_of_unity(make_rat(1, 4)) - CycQ::root_of_unity(make_rat(-1, 4)), Rat(6));
    for (int n = 1; n < 6; ++n) {
        QSeries plus(Rat(6)), minus(Rat(6));
        plus.set(Rat(0), CycQ::one());
        plus.set(Rat(n), CycQ::one());
        minus.set(Rat(0), CycQ::one());
        minus.set(Rat(n), CycQ(Rat(-1)));
        expect = expect * plus * plus * (minus * minus).inverse();
    }
    CHECK(direct.equal_up_to(expect, Rat(6)));
}

TEST_CASE("kernel parity and conversions") {
    for (int k : {1, 2, 3, 4}) {
        JetForm e = e_hat_jet(k, 6, Rat(5));
        JetForm r = reflected(e, 0);
        JetForm diff = k % 2 == 0 ? e - r : e + r;
        for (auto& [l, c] : diff.coeffs()) CHECK(c.is_zero());
    }
    // constant and single zeta-monomial conversions
    FourierForm cst(1, Rat(2), Rat(4));
    cst.set({Rat(0)}, QSeries::constant(CycQ::one(), Rat(4)));
    JetForm j = fourier_to_jet(cst, {0}, {0}, {3});
    CHECK(j.coeff({0}).equal_up_to(QSeries::constant(CycQ::one(), Rat(4)), Rat(4)));
    CHECK(j.coeff({2}).is_zero());

    FourierForm mono(1, Rat(2), Rat(4));
    mono.set({Rat(1)}, QSeries::constant(CycQ::one(), Rat(4)));
    JetForm jm = fourier_to_jet(mono, {0}, {0}, {4});
    for (int t = 0; t <= 4; ++t)
        CHECK(jm.coeff({t}).equal_up_to(QSeries::constant(CycQ(Rat(1) / Rat(factorial(t))), Rat(4)), Rat(4)));

    // declared off-axis divisors are rejected
    FourierForm bad(2, Rat(2), Rat(4));
    bad.declared_poles.push_back({{1, 1}, Rat(0), Rat(0)});
    CHECK_THROWS_AS(fourier_to_jet(bad, {0, 0}, {0, 0}, {1, 1}), NonOrthogonalPoles);
}

TEST_CASE("slash bookkeeping") {
    RatMat M{{make_rat(1, 2)}};
    LatticeShift X{{Rat(1)}, {Rat(0)}};
    CHECK(rho_factor(M, X) == CycQ(Rat(-1)));

    FourierForm th = theta_fourier(Rat(8));
    FourierForm s = slash_X(th, X, M);
    for (auto& [r, c] : s.support()) CHECK(c.equal_up_to(th.coeff(r), Rat(4)));

    // classical quasi-periodicity of the translate itself
    // theta(z + tau) = -q^(-1/2) zeta^-1 theta(z)
    LatticeShift Xt{{Rat(1)}, {Rat(0)}};
    FourierForm tr(1, th.window(), th.q_trunc());
    for (auto& [r, c] : th.support()) tr.set(r, c.shifted(r[0])); // zeta^nu q^(nu^2/2 + nu)
    for (auto& [r, c] : tr.support()) {
        std::vector<Rat> rm{r[0] + Rat(1)};
        QSeries rhs = th.coeff(rm).shifted(make_rat(-1, 2)) * CycQ(Rat(-1));
        CHECK(c.equal_up_to(rhs, Rat(4)));
    }

    CHECK_THROWS_AS(gamma_X_member(M, X, 1, 1, 1, 1), NotUnimodular);
    LatticeShift Xh{{Rat(0)}, {make_rat(1, 2)}};
    CHECK(gamma_X_member(M, Xh, 1, 0, 0, 1));
    CHECK(gamma_X_member(M, Xh, 1, 1, 0, 1));
    CHECK(!gamma_X_member(M, Xh, 0, -1, 1, 0));

    FourierForm small(1, make_rat(1, 2), Rat(3));
    small.set({make_rat(1, 2)}, QSeries::constant(CycQ::one(), Rat(3)));
    CHECK_THROWS_AS(slash_X(small, X, M), WindowOverflow);
}

TEST_CASE("taylor coefficients of the one-point context") {
    QJContext f1 = context_F1();
    QSeries res = g_taylor(f1, LatticeShift::zero(1), {-1}, Rat(6));
    CHECK(res.equal_up_to(QSeries::constant(CycQ::one(), Rat(6)), Rat(6)));
    // r = s = 0 decoration is the plain coefficient
    CHECK(g_rs(f1, LatticeShift::zero(1), {2}, 0, 0, Rat(6))
              .equal_up_to(g_taylor(f1, LatticeShift::zero(1), {2}, Rat(6)), Rat(6)));
    // empty xi branch returns the coefficient itself (total weight 0 here)
    QJContext th = context_Theta();
    QSeries xi = xi_comb(th, LatticeShift::zero(1), {1}, false, Rat(6));
    CHECK(xi.equal_up_to(g_taylor(th, LatticeShift::zero(1), {1}, Rat(6)), Rat(6)));
}

TEST_CASE("jet slash cocycle on the one-point kernel") {
    // rho-corrected composition of integral translates matches the combined translate
    QJContext f1 = context_F1();
    RatMat M = f1.index;
    LatticeShift X{{make_rat(1, 2)}, {Rat(0)}}, Xp{{Rat(1)}, {Rat(1)}};
    QSeries lhs = g_taylor(f1, X + Xp, {0}, Rat(5)) * (rho_factor(M, Xp) * zeta_factor(M, Xp, X));
    QSeries rhs = g_taylor(f1, X, {0}, Rat(5));
    CHECK(lhs.equal_up_to(rhs, std::min(lhs.trunc(), rhs.trunc())));
}

TEST_CASE("three point recursion stays consistent with the bracket") {
    bool clean = false;
    JetForm rec = bo_npoint_recursive(3, 2, Rat(4), &clean);
    JetForm bracket = bo_npoint_bracket(3, 2, Rat(4));
    CHECK(clean);
    CHECK(rec.equal_on(bracket, {-1, -1, -1}, {2, 2, 2}, Rat(4)));
    CHECK_THROWS_AS(bo_npoint_recursive(4, 1, Rat(2)), RecursionRankUnsupported);
}

TEST_CASE("window stability of the recursion") {
    bool clean = false;
    JetForm a = bo_npoint_recursive(2, 3, Rat(5), &clean);
    JetForm b = bo_npoint_recursive(2, 4, Rat(5), &clean);
    CHECK(a.equal_on(b, {-1, -1}, {3, 3}, Rat(5)));
}
