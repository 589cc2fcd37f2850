#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3gw/json_io.hpp"
#include "k3gw/qseries.hpp"
#include "k3gw/wseries.hpp"

#include <random>

using namespace k3gw;

namespace {

SLaurent S(std::initializer_list<std::pair<int, long>> t) {
    std::vector<SLaurent::Term> v;
    for (auto [e, c] : t) v.emplace_back(e, GQ(c));
    return SLaurent::from_terms(v);
}

struct Rng {
    std::mt19937 g{12345};
    int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }
    GQ scalar() {
        int im = uniform(0, 3) == 0 ? uniform(-3, 3) : 0;
        return GQ(rat(uniform(-5, 5), uniform(1, 3)), Rational(im));
    }
    SRat coeff() {
        std::vector<SLaurent::Term> t;
        int n = uniform(0, 3);
        for (int k = 0; k < n; ++k) t.emplace_back(uniform(-3, 3), scalar());
        SRat::Exps ex{uniform(-2, 1), uniform(0, 3) == 0 ? -1 : 0, uniform(-1, 1), 0};
        ex[3] = ex[1];
        return SRat(SLaurent::from_terms(t), ex);
    }
    QSeries series(int qmin, int qmax) {
        QSeries a(qmin, qmax);
        for (int n = qmin; n <= qmax; ++n) a.at(n) = coeff();
        return a;
    }
};

// brute-force coefficients of prod (1 - q^m)^{-24} as 64-bit integers
std::vector<long long> yz_oracle(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int k = m; k <= n; ++k) c[k] += c[k - m];
    return c;
}

QSeries delta(int qmax) {
    std::vector<long long> p(qmax, 0);
    p[0] = 1;
    for (int m = 1; m < qmax; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int k = qmax - 1; k >= m; --k) p[k] -= p[k - m];
    std::vector<long> v(p.begin(), p.end());
    return QSeries::from_ints(1, v);
}

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
    GQ a(rat(1, 2), rat(-3, 4));
    GQ b(Rational(2), Rational(1));
    CHECK(a * b / b == a);
    CHECK((a + b) - b == a);
    CHECK(GQ::i() * GQ::i() == GQ(-1));
    CHECK(GQ::ipow(-1) == -GQ::i());
    CHECK(parse_rational("6/4") == rat(3, 2));
    CHECK(rational_str(Rational(5)) == "5/1");
}

TEST_CASE("slaurent basics") {
    SLaurent a = S({{-1, 1}, {1, -1}});
    CHECK((a + S({{1, 1}})) == S({{-1, 1}}));
    CHECK(SLaurent::y_power(1) == S({{2, -1}}));
    CHECK(SLaurent::y_power(-1) == S({{-2, -1}}));
    CHECK(a.eval_unit_root(0).is_zero());
    CHECK(a.eval_unit_root(2).is_zero());
    SLaurent q = a.div_linear(0);
    CHECK(q.mul_linear(0) == a);
    SLaurent p = S({{0, 1}, {2, 1}});
    CHECK(p.eval_unit_root(1).is_zero());
    CHECK(p.eval_unit_root(3).is_zero());
    CHECK(p.div_linear(1).mul_linear(1) == p);
}

TEST_CASE("srat normalization and expansion") {
    // y/(1+y)^2 = -s^2/(1-s^2)^2
    SRat x(S({{2, -1}}), {-2, 0, -2, 0});
    CHECK(x.pole_order_z0() == 2);
    // adding the same denominators cancels
    CHECK((x - x).is_zero());
    // (1 - s^2) / (1 - s^2) = 1
    SRat y = SRat(S({{0, 1}, {2, -1}})) * SRat(S({{0, 1}}), {-1, 0, -1, 0}) * GQ(-1);
    CHECK(y == SRat(1));
    // geometric expansion of y/(1+y) = -s^2/(1-s^2) = -s^2 - s^4 - ...
    SRat z(S({{2, 1}}), {-1, 0, -1, 0});
    CHECK(z.expand_at_zero(6) == S({{2, -1}, {4, -1}, {6, -1}}));
    // dz of y^2 (= s^4) is 2 s^4
    CHECK(SRat(S({{4, 1}})).dz() == SRat(S({{4, 2}})));
    CHECK(SRat(GQ(7)).dz().is_zero());
}

TEST_CASE("worked examples for add/mul/invert/dz/dq") {
    QSeries a = QSeries::monomial(-1, SRat(1), 3);
    CHECK((a + (-a)).is_zero());
    QSeries f = QSeries::from_ints(0, {1, 24});
    CHECK(compare(f + QSeries(0, 1), f).equal);
    QSeries g = QSeries::constant(SRat(S({{-1, 1}, {1, -1}})), 2);
    CHECK((g + QSeries::constant(SRat(S({{1, 1}})), 2))[0] == SRat(S({{-1, 1}})));

    // (1 - q) * sum q^n = 1
    QSeries geo = QSeries::from_ints(0, std::vector<long>(8, 1));
    QSeries one_minus_q = QSeries::from_ints(0, {1, -1, 0, 0, 0, 0, 0, 0});
    auto p = one_minus_q * geo;
    CHECK(compare(p, QSeries::constant(SRat(1), 7)).equal);

    QSeries D = delta(12);
    auto inv = D.inverse();
    CHECK(inv.q_min() == -1);
    auto oracle = yz_oracle(10);
    for (int h = 0; h <= 10; ++h) CHECK(inv[h - 1] == SRat(GQ(static_cast<long>(oracle[h]))));
    CHECK(inv[0] == SRat(24));
    CHECK(inv[1] == SRat(324));
    CHECK(inv[2] == SRat(3200));
    CHECK(compare(D * inv, QSeries::constant(SRat(1), 10)).equal);

    QSeries mono = QSeries::monomial(1, SRat(S({{2, 1}})), 5);
    auto mi = mono.inverse();
    CHECK(mi.q_min() == -1);
    CHECK(mi[-1] == SRat(S({{-2, 1}})));
    CHECK(QSeries::constant(SRat(1), 3).inverse()[0] == SRat(1));

    // F*F leading coefficient: y^{-1} + 2 + y = -s^{-2} + 2 - s^2
    SLaurent fq0 = S({{-1, 1}, {1, -1}}) * GQ::i();
    CHECK(fq0 * fq0 == S({{-2, -1}, {0, 2}, {2, -1}}));

    CHECK(QSeries::monomial(-1, SRat(1), 2).dq()[-1] == SRat(-1));
    CHECK(QSeries::constant(SRat(5), 2).dq().is_zero());
}

TEST_CASE("ring laws on random truncated series") {
    Rng rng;
    for (int trial = 0; trial < 12; ++trial) {
        QSeries a = rng.series(rng.uniform(-1, 0), 3);
        QSeries b = rng.series(0, 3);
        QSeries c = rng.series(rng.uniform(-1, 0), 2);
        CHECK(compare(a + b, b + a).equal);
        CHECK(compare(a * b, b * a).equal);
        CHECK(compare((a * b) * c, a * (b * c)).equal);
        CHECK(compare(a * (b + c), a * b + a * c).equal);
        CHECK(compare((a + b) + c, a + (b + c)).equal);
        CHECK(compare((a * b).dz(), a.dz() * b + a * b.dz()).equal);
        CHECK(compare((a * b).dq(), a.dq() * b + a * b.dq()).equal);
    }
}

TEST_CASE("invert is a two-sided inverse") {
    Rng rng;
    for (int trial = 0; trial < 10; ++trial) {
        QSeries a = rng.series(0, 4);
        int e = rng.uniform(-2, 2);
        a.at(0) = SRat(SLaurent::monomial(e, rng.scalar() + GQ(7)), {rng.uniform(-2, 2), 0, rng.uniform(-1, 1), 0});
        auto inv = a.inverse();
        CHECK(compare(a * inv, QSeries::constant(SRat(1), 4)).equal);
        CHECK(compare(inv * a, QSeries::constant(SRat(1), 4)).equal);
    }
    QSeries bad = QSeries::constant(SRat(S({{0, 2}, {1, 1}})), 2);
    CHECK_THROWS(bad.inverse());
}

TEST_CASE("substitute_w") {
    // y + y^{-1} -> -2 - w^2 - w^4/12
    QSeries a = QSeries::constant(SRat(S({{2, -1}, {-2, -1}})), 0);
    WSeries w = substitute_w(a, 6);
    CHECK(w.coeff(0, 0) == GQ(-2));
    CHECK(w.coeff(1, 0).is_zero());
    CHECK(w.coeff(2, 0) == GQ(-1));
    CHECK(w.coeff(4, 0) == GQ(rat(-1, 12)));
    CHECK(w.coeff(6, 0) == GQ(rat(-2, 720)));
    CHECK(substitute_w(QSeries::constant(SRat(GQ(3)), 0), 4).coeff(0, 0) == GQ(3));

    // 1/12 - y/(1+y)^2 against an independent expansion of 1/12 + e^w/(1-e^w)^2
    SRat wp0 = SRat(GQ(rat(1, 12))) + SRat(S({{2, 1}}), {-2, 0, -2, 0});
    const int N = 10;
    std::vector<Rational> ew(N + 4), V(N + 3);
    Rational fact = 1;
    for (int k = 0; k < N + 4; ++k) {
        if (k > 0) fact *= k;
        ew[k] = Rational(1) / fact;
    }
    for (int k = 0; k < N + 3; ++k) V[k] = ew[k + 1];
    // 1/V^2 by series inversion of V^2
    std::vector<Rational> V2(N + 3, 0), inv(N + 3, 0);
    for (int i = 0; i < N + 3; ++i)
        for (int j = 0; i + j < N + 3; ++j) V2[i + j] += V[i] * V[j];
    inv[0] = 1 / V2[0];
    for (int k = 1; k < N + 3; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) acc += V2[j] * inv[k - j];
        inv[k] = -acc / V2[0];
    }
    std::vector<Rational> num(N + 3, 0);  // e^w / V^2, then shift by w^{-2}
    for (int i = 0; i < N + 3; ++i)
        for (int j = 0; i + j < N + 3; ++j) num[i + j] += ew[i] * inv[j];
    auto [val, cs] = substitute_w(wp0, N);
    CHECK(val == -2);
    for (int k = -2; k <= N; ++k) {
        Rational expect = num[k + 2] + (k == 0 ? rat(1, 12) : Rational(0));
        CHECK(cs[k + 2] == GQ(expect));
    }
    CHECK(cs[0] == GQ(1));
    CHECK(cs[2].is_zero());
    CHECK(cs[4] == GQ(rat(1, 240)));
}

TEST_CASE("substitute_w is multiplicative and intertwines dz with d/dw") {
    Rng rng;
    for (int trial = 0; trial < 8; ++trial) {
        QSeries a = rng.series(0, 2);
        QSeries b = rng.series(0, 2);
        const int W = 6;
        WSeries lhs = substitute_w(a * b, W);
        WSeries rhs = substitute_w(a, W + 8) * substitute_w(b, W + 8);
        CHECK(lhs == rhs.truncated(W, 2));
        // dz = y d/dy = d/dw since y = -e^w
        CHECK(substitute_w(a.dz(), W) == substitute_w(a, W + 1).dw().truncated(W, 2));
    }
}

TEST_CASE("json round trip") {
    Rng rng;
    QSeries a = rng.series(-1, 3);
    auto j = to_json(a);
    QSeries b = qseries_from_json(j);
    CHECK(compare(a, b).equal);
    CHECK(b.q_min() == -1);
    CHECK(b.q_max() == 3);
    QSeries c = QSeries::constant(SRat(S({{-1, 1}, {1, -1}})), 0);
    auto jc = to_json(c);
    CHECK(jc["rows"][0]["terms"][0]["s"] == -1);
    CHECK(jc["rows"][0]["terms"][0]["re"] == "1/1");
    CHECK_FALSE(jc["rows"][0].contains("den"));
}
