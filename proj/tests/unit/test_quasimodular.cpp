#include "qb/bracket.hpp"
#include "qb/kernels.hpp"
#include "qb/quasimodular.hpp"

#include <doctest.h>

using namespace qb;

TEST_CASE("spanning sets at level 1") {
    auto s42 = spanning_set(1, 4, 2, Rat(3));
    REQUIRE(s42.size() == 2); // G4 and G2^2
    auto s21 = spanning_set(1, 2, 1, Rat(3));
    CHECK(s21.size() == 1);
    auto s00 = spanning_set(1, 0, 0, Rat(3));
    REQUIRE(s00.size() == 1);
    CHECK(s00[0].series.coeff(Rat(0)) == CycQ::one());
    CHECK(spanning_set(1, 3, 1, Rat(3)).empty());
    CHECK_THROWS_AS(spanning_set(7, 2, 1, Rat(3)), UnsupportedLevel);
}

TEST_CASE("certification") {
    Certificate c = certify(qbracket(pf_Q(2), 14), 2, 1, 1, 10, "Q2");
    REQUIRE(c.ok());
    REQUIRE(c.solution.size() == 1);
    CHECK(c.solution[0] == CycQ::one());

    Certificate c1 = certify(qbracket(PartitionFunction::one(), 12), 0, 1, 0, 10, "1");
    CHECK(c1.ok());

    Certificate cq = certify(QSeries::monomial(Rat(1), CycQ::one(), Rat(12)), 2, 1, 0, 10, "q");
    CHECK(cq.status == Certificate::Status::failed);

    CHECK_THROWS_AS(certify(QSeries::monomial(Rat(1), CycQ::one(), Rat(3)), 8, 1, 4, 10, "short"),
                    InsufficientTruncation);

    json j = c.to_json();
    CHECK(j.at("status") == "certified-to-order");
    CHECK(j.at("solve_order").get<long long>() == 1);
}

TEST_CASE("ring operators") {
    QMPoly g2 = QMPoly::generator(2);
    CHECK(g2.delta_tau() == QMPoly::constant(make_rat(-1, 2)));
    QMPoly g4 = QMPoly::generator(4);
    // commutator with the derivative is the weight
    QMPoly comm = g4.d_tau().delta_tau() - g4.delta_tau().d_tau();
    CHECK(comm == g4 * Rat(4));
    // the derivative is recovered by expansion, not by stored rules
    QMPoly d2 = g2.d_tau();
    CHECK(d2.expand(Rat(12)).equal_up_to(g2.expand(Rat(12)).derivative_qdq(), Rat(12)));
    // Serre derivative of a modular generator is depth 0 of the right weight
    QMPoly s4 = g4.serre();
    CHECK(s4.depth() == 0);
    CHECK(s4.weight() == 6);
    QMPoly s6 = QMPoly::generator(6).serre();
    CHECK(s6.depth() == 0);
    CHECK(s6.weight() == 8);
}

TEST_CASE("level-2 heuristic span certifies a shifted product") {
    auto span = spanning_set(2, 2, 1, Rat(20));
    long long B = (long long)span.size();
    QSeries target = qbracket(pf_Q(1, make_rat(1, 2)) * pf_Q(1, make_rat(1, 2)), B + 8);
    Certificate c = certify(target, 2, 2, 1, 6, "Q1Q1(1/2)");
    CHECK(c.ok());
}

TEST_CASE("depth-equivalence of the derivative tuples") {
    // for a certified polynomial, (g, delta g, delta^2 g, ...) satisfies the
    // D-combination criterion: the combinations are modular
    QMPoly f = QMPoly::generator(2) * QMPoly::generator(2) + QMPoly::generator(4) * Rat(3);
    int k = 4, p = 2;
    std::vector<QMPoly> gs{f};
    for (int i = 1; i <= p; ++i) gs.push_back(gs.back().delta_tau());
    for (int i = 0; i + 1 <= p - 1; ++i) {
        // sum_m (-1)^m D^m g_{k-2i-2m} / ((k-2i-m-1)_m m!)
        QSeries acc(Rat(14));
        for (int m = 0; m + i <= p; ++m) {
            QMPoly g = gs[i + m];
            QSeries d = g.expand(Rat(14));
            for (int t = 0; t < m; ++t) d = d.derivative_qdq();
            Rat den = pochhammer(Rat(k - 2 * i - m - 1), m) * Rat(factorial(m));
            acc = acc + d * (Rat(m % 2 == 0 ? 1 : -1) / den);
        }
        Certificate c = certify(acc, k - 2 * i, 1, 0, 6, "combo");
        CHECK(c.ok());
    }
}
