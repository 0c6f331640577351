#include "qb/json_codec.hpp"
#include "qb/qseries.hpp"

#include <doctest.h>
#include <random>

using namespace qb;

TEST_CASE("roots of unity") {
    CHECK(CycQ::root_of_unity(make_rat(1, 2)) == CycQ(Rat(-1)));
    CHECK(CycQ::root_of_unity(make_rat(1, 3)) + CycQ::root_of_unity(make_rat(2, 3)) == CycQ(Rat(-1)));
    CycQ i4 = CycQ::root_of_unity(make_rat(1, 4));
    CHECK(i4 * i4 == CycQ::root_of_unity(make_rat(1, 2)));
    // e(a) e(-a) = 1 across reduced moduli
    for (long long d = 1; d <= 12; ++d)
        for (long long p = 0; p < d; ++p)
            CHECK(CycQ::root_of_unity(Rat(p, d)) * CycQ::root_of_unity(Rat(-p, d)) == CycQ::one());
}

TEST_CASE("field axioms at random moduli <= 24") {
    std::mt19937_64 rng(7);
    auto random_elt = [&](long long M) {
        CycQ x;
        for (int t = 0; t < 3; ++t) {
            long long e = (long long)(rng() % (unsigned)M);
            long long num = (long long)(rng() % 7) - 3;
            x += CycQ::root_of_unity(Rat(e, M)) * Rat(num);
        }
        return x;
    };
    for (long long M : {5, 8, 12, 24}) {
        for (int trial = 0; trial < 8; ++trial) {
            CycQ a = random_elt(M), b = random_elt(M), c = random_elt(M);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycQ::one());
        }
    }
}

TEST_CASE("embedding round trip is lossless") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        CycQ x;
        for (int t = 0; t < 3; ++t)
            x += CycQ::root_of_unity(Rat((long long)(rng() % 6), 6)) * Rat((long long)(rng() % 9) - 4);
        CycQ lifted = x.embedded(24);
        CycQ back;
        REQUIRE(lifted.try_reduce(6, back));
        CHECK(back == x);
    }
}

TEST_CASE("series inversion") {
    QSeries one_minus_q(Rat(6));
    one_minus_q.set(Rat(0), CycQ::one());
    one_minus_q.set(Rat(1), CycQ(Rat(-1)));
    QSeries geo = one_minus_q.inverse();
    for (int n = 0; n < 6; ++n) CHECK(geo.coeff(Rat(n)) == CycQ::one());

    // finite product (1-q)...(1-q^4) inverted: partition counts with parts <= 4
    QSeries prod = QSeries::constant(CycQ::one(), Rat(5));
    for (int n = 1; n <= 4; ++n) {
        QSeries f(Rat(5));
        f.set(Rat(0), CycQ::one());
        f.set(Rat(n), CycQ(Rat(-1)));
        prod = prod * f;
    }
    QSeries inv = prod.inverse();
    long long expect[] = {1, 1, 2, 3, 5};
    for (int n = 0; n <= 4; ++n) CHECK(inv.coeff(Rat(n)) == CycQ(Rat(expect[n])));

    CHECK_THROWS_AS(QSeries(Rat(3)).inverse(), NotAUnit);
}

TEST_CASE("double inversion is the identity up to common trunc") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        QSeries s(Rat(8));
        s.set(Rat(0), CycQ(Rat(1 + (long long)(rng() % 3))));
        for (int e = 1; e < 8; ++e) s.set(Rat(e), CycQ(Rat((long long)(rng() % 7) - 3)));
        QSeries back = s.inverse().inverse();
        CHECK(back.equal_up_to(s, back.trunc()));
    }
}

TEST_CASE("termwise q d/dq and the Leibniz rule") {
    QSeries s(Rat(4));
    s.set(make_rat(3, 2), CycQ::one());
    CHECK(s.derivative_qdq().coeff(make_rat(3, 2)) == CycQ(make_rat(3, 2)));
    CHECK(QSeries::constant(CycQ::one(), Rat(4)).derivative_qdq().is_zero());

    QSeries t(Rat(5));
    t.set(Rat(1), CycQ::one());
    t.set(Rat(2), CycQ(Rat(3)));
    QSeries dt = t.derivative_qdq();
    CHECK(dt.coeff(Rat(1)) == CycQ::one());
    CHECK(dt.coeff(Rat(2)) == CycQ(Rat(6)));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        QSeries a(Rat(6)), b(Rat(6));
        for (int e = 0; e < 6; ++e) {
            a.set(Rat(e), CycQ(Rat((long long)(rng() % 5) - 2)));
            b.set(Rat(e), CycQ(Rat((long long)(rng() % 5) - 2)));
        }
        QSeries lhs = (a * b).derivative_qdq();
        QSeries rhs = a.derivative_qdq() * b + a * b.derivative_qdq();
        CHECK(lhs.equal_up_to(rhs, lhs.trunc()));
    }
}

TEST_CASE("exponent rescaling") {
    QSeries s(Rat(3));
    s.set(Rat(1), CycQ::one());
    QSeries half = s.scale_exponents(2);
    CHECK(half.denom() == 2);
    CHECK(half.coeff(make_rat(1, 2)) == CycQ::one());
}

TEST_CASE("codec round trip is bit exact") {
    QSeries s(make_rat(17, 3));
    s.set(make_rat(-1, 8), CycQ::root_of_unity(make_rat(1, 3)) * make_rat(2, 7));
    s.set(Rat(2), CycQ(Rat(5)));
    json j = to_json(s);
    QSeries back = qseries_from_json(j);
    CHECK(back == s);
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("truncation is enforced") {
    QSeries s(Rat(3));
    s.set(Rat(1), CycQ::one());
    CHECK_THROWS_AS(s.coeff(Rat(5)), TruncationUnderflow);
    QSeries t(Rat(10));
    CHECK_THROWS_AS(s.equal_up_to(t, Rat(7)), TruncationUnderflow);
}
