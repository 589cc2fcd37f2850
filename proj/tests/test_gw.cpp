#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3gw/gw.hpp"
#include "k3gw/jacobi.hpp"

using namespace k3gw;

namespace {

// prod (1 - q^m)^{-24} by repeated geometric series
std::vector<long> eta_power_inverse(int n) {
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int k = m; k <= n; ++k) p[k] += p[k - m];
    return p;
}

// n p_n = 24 sum sigma(k) p_{n-k}
std::vector<long> sigma_recursion(int n) {
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int j = 1; j <= n; ++j) {
        long s = 0;
        for (int k = 1; k <= j; ++k) {
            long sig = 0;
            for (int m = 1; m <= k; ++m)
                if (k % m == 0) sig += m;
            s += sig * p[j - k];
        }
        p[j] = 24 * s / j;
    }
    return p;
}

// hyperelliptic BPS counts, rows h = 2..15, columns g = 2..6
const long kTable1[14][5] = {
    {1, 0, 0, 0, 0},
    {36, 0, 0, 0, 0},
    {672, 6, 0, 0, 0},
    {8728, 204, 0, 0, 0},
    {88830, 3690, 9, 0, 0},
    {754992, 47160, 300, 0, 0},
    {5573456, 476700, 5460, 0, 0},
    {36693360, 4048200, 70848, 36, 0},
    {219548277, 29979846, 730107, 1134, 0},
    {1210781880, 198559080, 6333204, 19640, 0},
    {6221679552, 1197526770, 47948472, 244656, 36},
    {30045827616, 6666313920, 324736392, 2438736, 1176},
    {137312404502, 34612452966, 2002600623, 20589506, 20895},
    {597261371616, 169017136848, 11396062440, 152487720, 265860},
};

}  // namespace

TEST_CASE("Yau-Zaslow numbers against two independent expansions") {
    auto N = yau_zaslow(10);
    auto a = eta_power_inverse(10), b = sigma_recursion(10);
    REQUIRE(N.size() == 11);
    for (int h = 0; h <= 10; ++h) {
        CHECK(N[h] == a[h]);
        CHECK(a[h] == b[h]);
    }
    CHECK(N[0] == 1);
    CHECK(N[1] == 24);
    CHECK(N[2] == 324);
    CHECK(N[3] == 3200);
    CHECK_THROWS_AS(yau_zaslow(-1), std::invalid_argument);
}

TEST_CASE("theorem series") {
    // d = 1 is Yau-Zaslow with only k = 0
    auto t = theorem_series(Series::mthm0, 1, 5);
    auto N = yau_zaslow(6);
    CHECK(t.rows.size() == 7);
    for (int h = 0; h <= 6; ++h) CHECK(t.rows.at({h, 0}) == N[h]);

    // G / Delta: G = 1 + (y^-2 + 4y^-1 + 6 + 4y + y^2) q + ..., so the q^0 row is G_1 + 24
    auto g = theorem_series(Series::mthm1, 2, 1);
    CHECK(g.rows.at({0, 0}) == 1);
    CHECK(g.rows.at({1, 0}) == 30);
    CHECK(g.rows.at({1, 1}) == 4);
    CHECK(g.rows.at({1, -2}) == 1);
    auto G = to_gw_table(generator("G", 2).series, "G", 0);
    CHECK(G.rows.at({3, -2}) == 6);
    CHECK(G.rows.at({3, -1}) == 24);
    CHECK(G.rows.at({3, 0}) == 36);

    // 1/(2-2d) y d/dy G^{d-1} at d = 2 is -1/2 y d/dy G: odd in k
    auto m2 = theorem_series(Series::mthm2, 2, 2);
    for (auto& [hk, v] : m2.rows) CHECK(m2.rows.at({hk.first, -hk.second}) == -v);
    CHECK(m2.rows.at({1, 1}) == -2);

    // binom(2,1)/2 = 1: mthm3(2) is (q d/dq F)^2 / Delta
    QSeries F = generator("F", 4).series;
    QSeries ref = (F.dq() * F.dq() * eta_and_delta(5).second.inverse()).truncated(3);
    CHECK(compare(theorem_closed_form(Series::mthm3, 2, 3), ref).equal);
    CHECK(compare(theorem_closed_form(Series::extra_eval, 2, 3),
                  (F * F.dq() * eta_and_delta(5).second.inverse()).truncated(3))
              .equal);

    // index d-1: |k| <= (d-1)(h+1)-ish support stays bounded by the q-order
    auto m0 = theorem_series(Series::mthm0, 3, 4);
    for (auto& [hk, v] : m0.rows) CHECK(std::abs(hk.second) <= 2 + 2 * hk.first);

    CHECK_THROWS_AS(theorem_series(Series::mthm1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(theorem_series(Series::extra_eval, 3, 2), std::invalid_argument);
    CHECK(parse_series("mthm2") == Series::mthm2);
    CHECK_THROWS_AS(parse_series("mthm9"), std::invalid_argument);
}

TEST_CASE("genus-1 closed form") {
    QSeries H = genus1_closed_form(2);
    auto t = to_gw_table(H, "genus1", 2);
    CHECK(t.rows.at({0, -1}) == 3);
    CHECK(t.rows.at({0, 0}) == -48);
    CHECK(t.rows.at({0, 1}) == 3);
    CHECK(H.is_real());
    for (auto& [hk, v] : t.rows) CHECK(t.rows.at({hk.first, -hk.second}) == v);
}

TEST_CASE("sine basis is unitriangular") {
    auto S = sine_basis(6);
    for (int g = 2; g <= 6; ++g) {
        CHECK(S.at({g, g}) == 1);
        for (int j = 2; j < g; ++j) CHECK(S.at({g, j}) == 0);
    }
    // (2 sin(u/2))^6 = u^6 - u^8/4 + ...
    CHECK(S.at({2, 3}) == Rational(-1, 4));
}

TEST_CASE("hyperelliptic BPS counts for h <= 10") {
    auto t = hyperelliptic_tables(10, 6);
    // -1/4 sits at u^8 q^1; with the q^{h-1} reading used by the table that is (g, h) = (3, 2)
    CHECK(t.H.at({3, 2}) == Rational(-1, 4));
    CHECK(t.H.at({3, 1}) == 0);
    for (int h = 2; h <= 10; ++h)
        for (int g = 2; g <= 6; ++g) {
            CAPTURE(h);
            CAPTURE(g);
            CHECK(t.h.at({g, h}) == kTable1[h - 2][g - 2]);
            CHECK((t.h.at({g, h}) != 0) == ck_region(g, h));
        }
    for (int g = 2; g <= 6; ++g) {
        CHECK(t.h.at({g, 0}) == 0);
        CHECK(t.h.at({g, 1}) == 0);
    }
    CHECK(bps_to_virtual(t) == t.H);
    std::string csv = hyp_table_csv(t);
    CHECK(csv.rfind("h,g=2,g=3,g=4,g=5,g=6\n2,1,0,0,0,0\n3,36,0,0,0,0\n", 0) == 0);
}
