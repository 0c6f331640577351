#include "qb/bracket.hpp"
#include "qb/formal.hpp"
#include "qb/kernels.hpp"
#include "qb/quasimodular.hpp"
#include "qb/tpoly.hpp"

#include <doctest.h>
#include <random>

using namespace qb;

TEST_CASE("first and second order operators") {
    for (int k : {2, 3, 5}) {
        FormalPoly img = op_partial(FormalPoly::symbol(k));
        CHECK(img == FormalPoly::symbol(k - 1));
    }
    // partial of the weight-1 symbol is the folded constant
    CHECK(op_partial(FormalPoly::symbol(1)) == FormalPoly::constant(CycQ::one()));
    // second-order operator on a two-factor monomial
    for (int a : {2, 3})
        for (int b : {2, 4}) {
            FormalPoly img = op_D(2, FormalPoly::symbol(a) * FormalPoly::symbol(b));
            FormalPoly expect = FormalPoly::symbol(a + b - 2) * CycQ(Rat(2) * Rat(binomial(a + b - 2, a - 1)));
            CHECK(img == expect);
        }
    // torsion-shift version keeps the shift
    FormalPoly imgN = op_partial(FormalPoly::symbol(3, make_rat(1, 2)));
    CHECK(imgN == FormalPoly::symbol(2, make_rat(1, 2)));
    // shifts add in the produced symbol
    FormalPoly two = op_D(2, FormalPoly::symbol(2, make_rat(1, 3)) * FormalPoly::symbol(2, make_rat(1, 3)));
    CHECK(two == FormalPoly::symbol(2, make_rat(2, 3)) * CycQ(Rat(2) * Rat(binomial(2, 1))));
}

TEST_CASE("projection on the formal algebra") {
    CHECK(pi_bo(FormalPoly::constant(CycQ::one())) == FormalPoly::constant(CycQ::one()));
    CHECK(pi_bo(FormalPoly::symbol(2)).is_zero());
    FormalPoly h4 = h_poly(4);
    CHECK(pi_bo(FormalPoly::symbol(4)) == h4);
    CHECK(h4 == FormalPoly::symbol(4) + FormalPoly::symbol(2) * FormalPoly::symbol(2) * CycQ(make_rat(1, 2)));
    CHECK(h_poly(2).is_zero());
    // h_k equals the projection of the weight-k generator
    for (int k : {5, 6}) CHECK(pi_bo(FormalPoly::symbol(k)) == h_poly(k));
}

TEST_CASE("substitution operators") {
    // Delta_1 vanishes identically
    for (int k : {2, 3, 4}) CHECK(op_Delta(1, FormalPoly::symbol(k)).is_zero());
    // Delta_2 on the fractional power vanishes after the weight-1 quotient
    FormalPoly frac = FormalPoly::symbol(2, Rat(0), make_rat(3, 2));
    CHECK(op_Delta(2, frac).dropped_weight1().is_zero());
    // commuting family
    FormalPoly probe = frac * FormalPoly::symbol(4);
    CHECK(op_Delta(2, op_Delta(4, probe)) == op_Delta(4, op_Delta(2, probe)));
}

TEST_CASE("double moment symbols") {
    TPoly t11 = TPoly::generator(1, 1);
    CHECK(t11.delta() == TPoly::constant(make_rat(-1, 2)));
    CHECK(TPoly::generator(0, 2).delta() == TPoly::constant(make_rat(-1, 2)));
    CHECK(TPoly::generator(2, 2).delta() == TPoly::generator(1, 1) * Rat(2));
    CHECK(TPoly::generator(3, 1).delta().is_zero());
    CHECK(t11.pi().bracket(8).is_zero());
    CHECK(t11.weight() == 2);

    // delta matches the derivative under the bracket
    for (auto g : {TPoly::generator(2, 2), TPoly::generator(1, 3), t11.odot(t11)}) {
        QSeries lhs = g.delta().bracket(7);
        QSeries rhs = g.bracket(7).derivative_qdq().truncated(Rat(8));
        // delta corresponds to the depth-lowering derivation, not the q-derivative;
        // check instead on certified polynomials
        (void)lhs;
        (void)rhs;
    }
    Certificate c = certify(TPoly::generator(2, 2).bracket(16), 4, 1, 2, 10, "T22");
    REQUIRE(c.ok());
    QMPoly poly = qmpoly_from_certificate(c);
    QSeries lhs = TPoly::generator(2, 2).delta().bracket(10);
    CHECK(lhs.equal_up_to(poly.delta_tau().expand(Rat(11)), Rat(11)));

    // projection is multiplicative for the induced product
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 6; ++trial) {
        auto rnd = [&] {
            int k = (int)(rng() % 3);
            int l = 1 + (int)(rng() % 3);
            return TPoly::generator(k, l);
        };
        TPoly f = rnd(), g = rnd();
        while (f.weight() + g.weight() > 10) {
            f = rnd();
            g = rnd();
        }
        CHECK(f.odot(g).pi() == f.pi().odot(g.pi()));
    }
}

TEST_CASE("evaluation morphism respects the grading") {
    FormalPoly f = FormalPoly::symbol(3) * FormalPoly::symbol(3);
    auto pf = f.to_partition_function();
    QSeries direct = qbracket(pf, 6);
    QSeries split = qbracket(pf_Q(3) * pf_Q(3), 6);
    CHECK(direct.equal_up_to(split, Rat(7)));
}
