#include "qb/bracket.hpp"
#include "qb/kernels.hpp"

#include <doctest.h>

using namespace qb;

TEST_CASE("bracket basics") {
    QSeries one = qbracket(PartitionFunction::one(), 5);
    CHECK(one.equal_up_to(QSeries::constant(CycQ::one(), Rat(6)), Rat(6)));

    QSeries q2 = qbracket(pf_Q(2), 4);
    QSeries expect(Rat(5));
    expect.set(Rat(0), CycQ(make_rat(-1, 24)));
    expect.set(Rat(1), CycQ::one());
    expect.set(Rat(2), CycQ(Rat(3)));
    expect.set(Rat(3), CycQ(Rat(4)));
    expect.set(Rat(4), CycQ(Rat(7)));
    CHECK(q2 == expect);

    QSeries w1 = qbracket(pf_Q(1, make_rat(1, 2)), 0);
    CHECK(w1.coeff(Rat(0)) == CycQ(make_rat(-1, 2)));
}

TEST_CASE("u-bracket basics") {
    USeries u1 = ubracket(PartitionFunction::one(), 4);
    CHECK(u1.coeff(Partition{}) == CycQ::one());
    CHECK(u1.coeffs().size() == 1);

    auto f = pf_Q(2);
    USeries uf = ubracket(f, 4);
    CHECK(uf.coeff(Partition({1})) == f(Partition({1})) - f(Partition{}));

    CHECK(uf.specialize_q().equal_up_to(qbracket(f, 4), Rat(5)));

    // the signed distinct-part expansion really is the inverse
    USeries prod = useries_all(6) * useries_all_inverse(6);
    USeries one(6);
    one.set(Partition{}, CycQ::one());
    CHECK(prod == one);
    CHECK(useries_all(6).inverse() == useries_all_inverse(6));
}

TEST_CASE("induced product") {
    auto f = pf_Q(2);
    auto unit = odot(f, PartitionFunction::one(), 5);
    enumerate_partitions(5, [&](const Partition& p) { CHECK(unit(p) == f(p)); });
    CHECK_THROWS_AS(unit(Partition({6})), TruncExceeded);

    // the u-bracket of the induced product splits exactly
    auto g = pf_Q(3);
    USeries lhs = ubracket(odot(f, g, 5), 5);
    USeries rhs = ubracket(f, 5) * ubracket(g, 5);
    CHECK(lhs == rhs);

    // pointwise products do not split under the q-bracket
    QSeries pw = qbracket(f * f, 6);
    QSeries split = qbracket(f, 6) * qbracket(f, 6);
    CHECK(!pw.equal_up_to(split, Rat(6)));
}

TEST_CASE("weight-2 multiplication rule") {
    // verified multiplier: the weight-2 bracket itself (see the ledger note on the
    // -1/2 normalization of the printed constant)
    QSeries g2 = eisenstein_G(2, Rat(9));
    for (auto& f : {PartitionFunction::one(), pf_Q(2), pf_Q(4), pf_Q(2) * pf_Q(2)}) {
        QSeries lhs = qbracket(pf_Q(2) * f, 8);
        QSeries fb = qbracket(f, 8);
        QSeries rhs = fb.derivative_qdq() + g2 * fb;
        CHECK(lhs.equal_up_to(rhs, Rat(9)));
    }
}

TEST_CASE("bracket depends only on values up to the order") {
    auto f = pf_Q(2);
    PartitionFunction g("perturbed", 2, 1, [f](const Partition& p) {
        CycQ v = f(p);
        if (p.size() > 5) v += CycQ(Rat(7));
        return v;
    });
    CHECK(qbracket(f, 5).equal_up_to(qbracket(g, 5), Rat(6)));
}
