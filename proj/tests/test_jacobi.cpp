#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3gw/jacobi.hpp"

using namespace k3gw;
using Kind = GeneratorName::Kind;

namespace {

SLaurent S(std::initializer_list<std::pair<int, long>> t) {
    std::vector<SLaurent::Term> v;
    for (auto [e, c] : t) v.emplace_back(e, GQ(c));
    return SLaurent::from_terms(v);
}

QSeries gen(const std::string& name, int q) { return generator(name, q).series; }

long sigma(int d, int k) {
    long s = 0;
    for (int m = 1; m <= d; ++m)
        if (d % m == 0) {
            long p = 1;
            for (int j = 0; j < k; ++j) p *= m;
            s += p;
        }
    return s;
}

QSeries divisor_series(long scale, int k, int q) {
    std::vector<long> c(q + 1);
    c[0] = 1;
    for (int d = 1; d <= q; ++d) c[d] = scale * sigma(d, k);
    return QSeries::from_ints(0, c);
}

bool same(const QSeries& a, const QSeries& b) { return compare(a, b).equal; }

}  // namespace

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == rat(-1, 2));
    CHECK(bernoulli(2) == rat(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == rat(-1, 30));
    CHECK(bernoulli(12) == rat(-691, 2730));
}

TEST_CASE("generator names") {
    for (std::string n : {"F", "K", "J1", "wp", "wp_prime", "E2", "E4", "E6", "G", "Delta", "Theta_D4", "J2_3", "J3_2",
                          "G_2", "Eta", "Theta1"})
        CHECK(GeneratorName::parse(n).str() == n);
    CHECK_THROWS(GeneratorName::parse("E3"));
    CHECK_THROWS(GeneratorName::parse("J2_0"));
    CHECK_THROWS(GeneratorName::parse("nope"));
    CHECK_THROWS(generator("F", -1));
}

TEST_CASE("leading coefficients") {
    QSeries F = gen("F", 3);
    CHECK(F[0] == SRat(S({{-1, 1}, {1, -1}}) * GQ::i()));
    QSeries K = gen("K", 3);
    CHECK(K[0] == SRat(S({{1, 1}, {-1, -1}})));
    // phi_{1,0} = -K
    CHECK(K[1] == SRat(S({{-3, 1}, {-1, -3}, {1, 3}, {3, -1}})));
    CHECK(gen("wp", 2)[0] == SRat(GQ(rat(1, 12))) + SRat(S({{2, 1}}), {-2, 0, -2, 0}));
    QSeries G = gen("G", 3);
    CHECK(G[0] == SRat(1));
    CHECK(G[1] == SRat(S({{-4, 1}, {-2, -4}, {0, 6}, {2, -4}, {4, 1}})));
    CHECK(G[2] == SRat(S({{-4, 6}, {-2, -24}, {0, 36}, {2, -24}, {4, 6}})));
    CHECK(G.is_real());
    CHECK(K.is_real());
    CHECK_FALSE(F.is_real());
}

TEST_CASE("Eisenstein series against divisor sums") {
    CHECK(same(gen("E2", 8), divisor_series(-24, 1, 8)));
    CHECK(gen("E2", 3)[3] == SRat(-96));
    CHECK(same(gen("E4", 8), divisor_series(240, 3, 8)));
    // E6 comes from the Weierstrass cubic
    CHECK(same(gen("E6", 8), divisor_series(-504, 5, 8)));
    CHECK(generator("E6", 2).weight2 == 12);
}

TEST_CASE("eta and Delta") {
    auto [eta, delta] = eta_and_delta(6);
    CHECK(eta.q_shift == rat(1, 24));
    CHECK(same(delta, QSeries::from_ints(1, {1, -24, 252, -1472, 4830, -6048})));
    PrefixedSeries e24{0, 1, eta.series.pow(24)};
    e24.q_shift = eta.q_shift * 24;
    CHECK(same(e24.to_qseries(), delta));
    auto ratio = eta_quotient({{2, 8}, {1, -4}}, 6);
    CHECK(ratio.q_shift == rat(1, 2));
    CHECK_THROWS(ratio.to_qseries());
    auto d2 = eta_quotient({{2, 24}}, 8).to_qseries();
    CHECK(d2.q_min() == 2);
    CHECK(d2[2] == SRat(1));
    CHECK(d2[3].is_zero());
    CHECK(d2[4] == SRat(-24));
}

TEST_CASE("D4 theta function") {
    const int q = 6;
    auto th = theta_d4(q);
    CHECK(th.q_shift == rat(1, 2));
    CHECK(th.series.eval_s(GQ(1)).is_zero());
    // lattice sum = 2 eta(2 tau)^8 / eta(tau)^4
    auto ls = d4_lattice_sum(q);
    auto rhs = eta_quotient({{2, 8}, {1, -4}}, q) * GQ(2);
    CHECK(ls.q_shift == rhs.q_shift);
    CHECK(same(ls.series, rhs.series));
    CHECK(ls.series.is_real());
    // Theta = -theta_1 eta(2 tau)^6 / eta(tau)^3
    auto t1 = generator("Theta1", q).prefixed();
    auto prod = t1 * eta_quotient({{2, 6}, {1, -3}}, q) * GQ(-1);
    CHECK(prod.q_shift == th.q_shift);
    CHECK(same(prod.series, th.series));
}

TEST_CASE("F at z = 1/2") {
    // z = 1/2 means s = i
    QSeries Fh = gen("F", 8).eval_s(GQ::i());
    auto rhs = eta_quotient({{2, 2}, {1, -4}}, 8) * GQ(2);
    CHECK(rhs.q_shift == 0);
    CHECK(same(Fh, rhs.to_qseries()));
}

TEST_CASE("closure relations") {
    const int q = 4;
    for (Kind k : {Kind::F, Kind::K, Kind::J1, Kind::WP, Kind::WP_PRIME})
        for (Var v : {Var::z, Var::tau}) {
            auto g = generator(GeneratorName{k, 0}, q);
            QuasiJacobiForm d;
            CHECK_NOTHROW(d = diff(g, v));
            CHECK(same(d.series, closure_relation(k, v, q)));
            CHECK(d.weight2 == g.weight2 + (v == Var::z ? 2 : 4));
            CHECK(d.index2 == g.index2);
        }
    // printed forms for two of them
    auto F = generator("F", q), J1 = generator("J1", q), wp = generator("wp", q), E2 = generator("E2", q);
    CHECK(same(diff(J1, Var::z).series, E2.series * GQ(rat(1, 12)) - wp.series));
    CHECK(same(diff(F, Var::tau).series,
               F.series * (J1.series * J1.series * GQ(rat(1, 2)) - wp.series * GQ(rat(1, 2)) -
                           E2.series * GQ(rat(1, 12)))));
    CHECK(diff(generator("E4", q), Var::z).series.is_zero());
    CHECK(diff(generator("J1", q), Var::z).pole_order_z0 == 2);
}

TEST_CASE("heat equation and Weierstrass cubic") {
    const int q = 5;
    QSeries F = gen("F", q), E2 = gen("E2", q);
    CHECK(same(F.dq(), F.dz().dz() * GQ(rat(1, 2)) - E2 * F * GQ(rat(1, 8))));
    QSeries wp = gen("wp", q), wpp = gen("wp_prime", q), E4 = gen("E4", q);
    CHECK(same(wp.dz(), wpp));
    CHECK(same(wpp * wpp, wp * wp * wp * GQ(4) - E4 * wp * GQ(rat(1, 12)) + divisor_series(-504, 5, q) * GQ(rat(1, 216))));
    // J1 = dz log F
    CHECK(same(gen("J1", q) * F, F.dz()));
    // G = F^2 dz^2 log F = K^2 (wp - E2/12)
    QSeries K = gen("K", q);
    CHECK(same(gen("G", q), K * K * (wp - E2 * GQ(rat(1, 12)))));
}

TEST_CASE("deformed Eisenstein series") {
    const int q = 4;
    // J_{2,1} q^0 = y/(y-1) - 1/2
    CHECK(gen("J2_1", q)[0] == SRat(S({{2, 1}}), {0, -1, 0, -1}) + SRat(GQ(rat(-1, 2))));
    // q^1 of J_{2,2}: -2 (y + y^{-1}) = 2 s^2 + 2 s^{-2}
    CHECK(gen("J2_2", q)[1] == SRat(S({{-2, 2}, {2, 2}})));
    CHECK(gen("J2_2", q)[0] == SRat(GQ(rat(1, 6))));
    // G_1 has no constant term; q^1: -(y^2 - y^{-2}) = -s^4 + s^{-4}
    CHECK(gen("G_1", q)[0].is_zero());
    CHECK(gen("G_1", q)[1] == SRat(S({{-4, 1}, {4, -1}})));
    // q^3 of G_2 gets k=3,r=1 and k=1,r=2
    CHECK(gen("G_2", q)[3] == SRat(S({{-12, -1}, {12, -1}, {-4, -3}, {4, -3}})));
    auto j3 = generator("J3_1", 2);
    CHECK(j3.q_scale == 2);
    CHECK(j3.series.q_max() == 4);
    // q^{1/2} of J_{3,1}: -(y - y^{-1}) = s^2 - s^{-2}
    CHECK(j3.series[1] == SRat(S({{-2, -1}, {2, 1}})));
    CHECK(j3.series[0].is_zero());
}

TEST_CASE("bigrading and realness") {
    const int q = 3;
    auto F = generator("F", q), wp = generator("wp", q), E4 = generator("E4", q);
    auto p = F * F * wp * E4;
    CHECK(p.weight2 == 2 * (-1 - 1 + 2 + 4));
    CHECK(p.index2 == 2);
    CHECK(p.pole_order_z0 == 2);
    CHECK(generator("J1", q).measured_pole_order() == 1);
    CHECK(generator("wp", q).measured_pole_order() == 2);
    CHECK(generator("wp_prime", q).measured_pole_order() == 3);
    CHECK(generator("F", q).measured_pole_order() == -1);
    CHECK((F * F * wp).holomorphic_at_zero());
    CHECK_FALSE((F * wp).holomorphic_at_zero());
    CHECK(generator("Delta", q).series.is_real());
    CHECK_THROWS(F + wp);
}

TEST_CASE("f_u expansion") {
    const int q = 3, U = 9;
    WSeries fu = f_u_expansion(q, U);
    // q^0 part is 2 sin(u/2)
    Rational fact = 1;
    for (int n = 0; n <= U; ++n) {
        if (n > 0) fact *= n;
        Rational expect = 0;
        if (n % 2 == 1) {
            Rational p2 = 1;
            for (int j = 0; j < n; ++j) p2 *= 2;
            expect = Rational(2) / (p2 * fact);
            if ((n / 2) % 2 == 1) expect = -expect;
        }
        CHECK(fu.coeff(n, 0) == GQ(expect));
    }
    CHECK(fu.coeff(1, 0) == GQ(1));
    for (int n = 1; n <= q; ++n) CHECK(fu.coeff(1, n).is_zero());
    // independent path: substitute s = e^{w/2} into F and set w = i u
    WSeries viaw = substitute_w(gen("F", q), U).rescale(GQ::i());
    CHECK(fu == viaw);
    CHECK(fu.is_real());
}

TEST_CASE("qjac_fit") {
    const int q = 5;
    QSeries F = gen("F", q);
    auto fit = qjac_fit(F * F * GQ(-1), 0, 2);
    REQUIRE(fit.status == QJacFit::Status::ok);
    REQUIRE(fit.terms.size() == 1);
    CHECK(fit.terms[0].first.str() == "F^2");
    CHECK(fit.terms[0].second == GQ(-1));
    CHECK(fit.holomorphic);

    auto g = qjac_fit(gen("G", q), 2, 2);
    REQUIRE(g.status == QJacFit::Status::ok);
    CHECK(g.holomorphic);
    REQUIRE(g.terms.size() == 2);
    for (const auto& [m, c] : g.terms) {
        if (m.str() == "F^2*E2") CHECK(c == GQ(rat(1, 12)));
        else CHECK((m.str() == "F^2*wp" && c == GQ(-1)));
    }
    CHECK(g.verified_through == q);
    CHECK(g.fitted_through < q);

    auto e = qjac_fit(gen("E2", q), 2, 0);
    REQUIRE(e.status == QJacFit::Status::ok);
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].first.str() == "E2");

    CHECK(qjac_fit(gen("E4", q), 2, 0).status == QJacFit::Status::no_representation);
    CHECK(qjac_fit(gen("G", 0), 4, 2).status == QJacFit::Status::underdetermined);

    // a pole survives in a non-holomorphic combination
    auto wpF = qjac_fit(F * F * gen("wp", q) * gen("J1", q), 3, 2);
    REQUIRE(wpF.status == QJacFit::Status::ok);
    CHECK_FALSE(wpF.holomorphic);
    CHECK(same(qjac_evaluate(g.terms, q), gen("G", q)));
}
