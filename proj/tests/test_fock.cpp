#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3gw/ematrix.hpp"
#include "k3gw/jacobi.hpp"
#include "k3gw/linsolve.hpp"

#include <random>

using namespace k3gw;

namespace {

using Terms = std::vector<std::pair<int, long>>;

SLaurent L(const Terms& t) {
    std::vector<SLaurent::Term> v;
    for (auto [e, c] : t) v.emplace_back(e, GQ(c));
    return SLaurent::from_terms(v);
}

QSeries gen(const std::string& name, int q) { return generator(name, q).series; }

const SurfaceModel& k3() {
    static const SurfaceModel S = SurfaceModel::k3_rank24();
    return S;
}
const SurfaceModel& orth() {
    static const SurfaceModel S = SurfaceModel::k3_rank24_orth();
    return S;
}
const SurfaceModel& mini() {
    static const SurfaceModel S = SurfaceModel::mini();
    return S;
}

FockVector mono(std::vector<std::pair<int, int>> p) { return FockVector(NakMonomial(std::move(p))); }

// random combination of up to 3 monomials of energy d
FockVector random_state(const SurfaceModel& S, int d, std::mt19937& rng) {
    auto basis = nakajima_basis(S, d);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    FockVector v;
    for (int i = 0; i < 3; ++i) v.add(basis[pick(rng)], coef(rng));
    return v;
}

QSeries over_delta(const QSeries& x, int Q) { return (x * eta_and_delta(Q + 2).second.inverse()).truncated(Q); }

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("surface models carry the K3 intersection data") {
    for (const auto* S : {&k3(), &orth()}) {
        CHECK(S->size() == 24);
        CHECK(S->pair(S->B, S->B) == -2);
        CHECK(S->pair(S->B, S->F) == 1);
        CHECK(S->pair(S->F, S->F) == 0);
        CHECK(S->pair(S->e(), S->w()) == 1);
        CHECK(S->pair(S->e(), S->e()) == 0);
        CHECK(S->pair(S->w(), S->w()) == 0);
    }
    // even unimodular of signature (3,19): determinant -1 on the degree-2 part
    GQMatrix g;
    for (int i = 1; i < k3().w(); ++i) {
        g.emplace_back();
        for (int j = 1; j < k3().w(); ++j) g.back().push_back(GQ(k3().pair(i, j)));
    }
    CHECK(determinant(g) == GQ(-1));
    for (int i = 1; i < k3().w(); ++i) CHECK(Rational(k3().pair(i, i) / 2).get_den() == 1);
    auto bb = k3().cup(1, 1);
    REQUIRE(bb.size() == 1);
    CHECK(bb[0] == std::make_pair(k3().w(), Rational(-2)));
}

TEST_CASE("energy-d basis sizes") {
    CHECK(nakajima_basis(k3(), 1).size() == 24);
    CHECK(nakajima_basis(k3(), 2).size() == 324);
    CHECK(nakajima_basis(k3(), 3).size() == 3200);
}

TEST_CASE("Nakajima operators: single commutators") {
    const auto& S = k3();
    CHECK(nak_apply(S, 1, S.w(), mono({{1, S.e()}})) == Rational(-1) * FockVector::vacuum());
    CHECK(nak_apply(S, 2, S.e(), mono({{2, S.w()}})) == Rational(-2) * FockVector::vacuum());
    CHECK(nak_apply(S, 1, 3, FockVector::vacuum()).is_zero());
    CHECK_THROWS_AS(nak_apply(S, 0, 3, FockVector::vacuum()), std::invalid_argument);
}

TEST_CASE("Heisenberg relation on random states") {
    const auto& S = mini();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> cls(0, S.size() - 1), mode(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        int m = mode(rng), n = mode(rng), a = cls(rng), b = cls(rng);
        if (m == 0 || n == 0) continue;
        FockVector v = random_state(S, 3, rng);
        FockVector lhs = nak_apply(S, m, a, nak_apply(S, n, b, v)) - nak_apply(S, n, b, nak_apply(S, m, a, v));
        Rational c = m + n == 0 ? Rational(-m) * S.pair(a, b) : Rational(0);
        CHECK(lhs == c * v);
    }
}

TEST_CASE("pairing: adjoint rule and Poincare pairing") {
    const auto& S = k3();
    CHECK(inner(S, mono({{1, S.w()}}), mono({{1, S.e()}})) == 1);
    CHECK(inner(S, mono({{1, 1}}), mono({{1, 1}})) == -2);
    CHECK(inner(S, mono({{1, 1}}), mono({{2, S.e()}})) == 0);

    std::mt19937 rng(3);
    const auto& M = mini();
    std::uniform_int_distribution<int> cls(0, M.size() - 1), mode(1, 2);
    for (int trial = 0; trial < 40; ++trial) {
        int m = mode(rng), a = cls(rng);
        FockVector x = random_state(M, 3 - m, rng), y = random_state(M, 3, rng);
        Rational lhs = inner(M, nak_apply(M, -m, a, x), y);
        Rational rhs = inner(M, x, nak_apply(M, m, a, y)) * (m % 2 ? -1 : 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("diagonal against exceptional curve, divisors against curves") {
    const auto& S = k3();
    for (int d = 2; d <= 4; ++d) CHECK(inner(S, diagonal_class(S, d), exceptional_curve(S, d)) == -2);
    for (int d = 1; d <= 3; ++d)
        for (int g = 1; g < S.w(); g += 5)
            for (int b = 1; b < S.w(); b += 3)
                CHECK(inner(S, divisor_class(S, g, d), curve_class(S, b, d)) == S.pair(g, b));
}

TEST_CASE("L0: commutator with Nakajima operators, energy, vacuum") {
    const auto& S = mini();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int k = 1 + trial % 2, a = trial % S.size(), g = 1 + trial % (S.size() - 2);
        FockVector v = random_state(S, 3, rng);
        FockVector lhs = nak_apply(S, k, a, L0_apply(S, g, v)) - L0_apply(S, g, nak_apply(S, k, a, v));
        FockVector rhs = Rational(k) * nak_apply(S, k, S.cup(a, g), v);
        CHECK(lhs == rhs);
    }
    for (int d = 1; d <= 3; ++d) {
        FockVector v = random_state(S, d, rng);
        CHECK(L0_apply(S, S.e(), v) == Rational(d) * v);
    }
    CHECK(L0_apply(S, 1, FockVector::vacuum()).is_zero());
    CHECK_THROWS_AS(L0_apply(S, S.w(), FockVector::vacuum()), std::invalid_argument);
}

TEST_CASE("Lehn operator") {
    const auto& S = k3();
    CHECK(lehn_delta_apply(S, FockVector::vacuum()).is_zero());
    for (int c = 0; c < S.size(); ++c) CHECK(lehn_delta_apply(S, mono({{1, c}})).is_zero());
    // on the unit of Hilb^d it returns -1/2 times the diagonal class
    for (int d = 2; d <= 4; ++d) {
        std::vector<std::pair<int, int>> p(d, {1, S.e()});
        Rational fact = 1;
        for (int i = 2; i <= d; ++i) fact *= i;
        FockVector unit(NakMonomial(p), 1 / fact);
        CHECK(lehn_delta_apply(S, unit) == Rational(-1, 2) * diagonal_class(S, d));
    }
    // I(P) -> -A, so <d I(P) | Delta> = <A|Delta> * (-1) = 2
    FockVector IP = mono({{1, S.w()}, {1, S.e()}});
    CHECK(lehn_delta_apply(S, IP) == Rational(-1) * exceptional_curve(S, 2));
    CHECK(inner(S, lehn_delta_apply(S, IP), diagonal_class(S, 2)) == 2);
    // cup with a class is self-adjoint
    const auto& M = mini();
    auto basis = nakajima_basis(M, 3);
    for (std::size_t i = 0; i < basis.size(); i += 7)
        for (std::size_t j = 0; j < basis.size(); j += 5)
            CHECK(inner(M, lehn_delta_apply(M, basis[i]), FockVector(basis[j])) ==
                  inner(M, FockVector(basis[i]), lehn_delta_apply(M, basis[j])));
}

TEST_CASE("p0 on scalars") {
    const auto& S = orth();
    QSeries x = gen("G", 4);
    CHECK(p0_apply(S, S.F, x).coeffs() == x.coeffs());
    ClassVec W{{S.index("W"), Rational(1)}};
    CHECK(p0_apply(S, W, x).coeffs() == x.dq().coeffs());
    CHECK(p0_apply(S, {{S.index("g3"), Rational(1)}}, x).is_zero());
    CHECK_THROWS_AS(p0_apply(S, {{S.e(), Rational(1)}}, x), std::invalid_argument);
}

TEST_CASE("monomial grammar") {
    const auto& S = k3();
    auto m = NakMonomial::parse(S, "p(-2,w) p(-1,F) 1");
    CHECK(m.energy() == 3);
    CHECK(m.str(S) == "p(-2,w) p(-1,F) 1");
    CHECK(NakMonomial::parse(S, " 1 ").is_vacuum());
    CHECK(NakMonomial::parse(S, m.str(S)) == m);
    try {
        NakMonomial::parse(S, "p(-1,Q) 1");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("unknown class 'Q'") != std::string::npos);
        CHECK(msg.find("\n  p(-1,Q) 1\n" + std::string(2 + 5, ' ') + "^") != std::string::npos);
    }
    CHECK_THROWS_AS(NakMonomial::parse(S, "p(2,F) 1"), std::invalid_argument);
    CHECK_THROWS_AS(NakMonomial::parse(S, "p(-1,F)"), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST_CASE("phi table: printed expansions") {
    PhiTable phi(2);
    struct Row {
        int m, l;
        Terms q0, q1;
    };
    // (2,2) and (3,3) are printed shifted by +1
    const std::vector<Row> rows = {
        {1, -1, {}, {{-4, -1}, {-2, 4}, {0, -6}, {2, 4}, {4, -1}}},
        {1, 0, {{-1, 1}, {1, -1}}, {{-3, -1}, {-1, 3}, {1, -3}, {3, 1}}},
        {1, 1, {}, {{-4, 1}, {-2, -4}, {0, 6}, {2, -4}, {4, 1}}},
        {2, -2, {}, {{-6, -2}, {-4, 4}, {-2, 2}, {0, -8}, {2, 2}, {4, 4}, {6, -2}}},
        {2, -1, {}, {{-5, -2}, {-3, 6}, {-1, -4}, {1, -4}, {3, 6}, {5, -2}}},
        {2, 0, {{-2, 1}, {2, -1}}, {{-4, -4}, {-2, 8}, {2, -8}, {4, 4}}},
        {2, 1, {}, {{-5, 2}, {-3, -6}, {-1, 4}, {1, 4}, {3, -6}, {5, 2}}},
        {2, 2, {{0, 1}}, {{-6, 2}, {-4, -4}, {-2, -2}, {0, 8}, {2, -2}, {4, -4}, {6, 2}}},
        {3, -2, {}, {{-7, -3}, {-5, 6}, {-1, -3}, {1, -3}, {5, 6}, {7, -3}}},
        {3, -1, {}, {{-6, -3}, {-4, 9}, {-2, -9}, {0, 6}, {2, -9}, {4, 9}, {6, -3}}},
        {3, 0, {{-3, 1}, {3, -1}}, {{-5, -9}, {-3, 18}, {-1, -9}, {1, 9}, {3, -18}, {5, 9}}},
        {3, 1, {}, {{-6, 3}, {-4, -9}, {-2, 9}, {0, -6}, {2, 9}, {4, -9}, {6, 3}}},
        {3, 2, {}, {{-7, 3}, {-5, -6}, {-1, 3}, {1, 3}, {5, -6}, {7, 3}}},
        {3, 3, {{0, 1}}, {{-8, 3}, {-6, -6}, {-4, 3}, {-2, -6}, {0, 12}, {2, -6}, {4, 3}, {6, -6}, {8, 3}}},
        {4, 0, {{-4, 1}, {4, -1}}, {{-6, -16}, {-4, 32}, {-2, -16}, {2, 16}, {4, -32}, {6, 16}}},
    };
    CHECK(rows.size() == PhiTable::closed_form_entries().size());
    for (const auto& r : rows) {
        CAPTURE(r.m);
        CAPTURE(r.l);
        bool shifted = r.m == r.l && r.m > 1;
        const QSeries& f = shifted ? phi.shifted_form(r.m, r.l).series : phi.get(r.m, r.l);
        CHECK(f[0] == SRat(L(r.q0)));
        CHECK(f[1] == SRat(L(r.q1)));
    }
}

TEST_CASE("phi table: symmetries and gradings") {
    PhiTable phi(3);
    int n = 0;
    for (int m = -4; m <= 4; ++m)
        for (int l = -4; l <= 4; ++l) {
            if (m == 0 || !PhiTable::derivable(m, l)) continue;
            ++n;
            CAPTURE(m);
            CAPTURE(l);
            if (PhiTable::derivable(-m, -l)) CHECK((phi.get(m, l) + phi.get(-m, -l)).is_zero());
            if (l != 0 && PhiTable::derivable(l, m))
                CHECK((phi.get(m, l) * GQ(l) - phi.get(l, m) * GQ(m)).is_zero());
            const auto& f = phi.shifted_form(m, l);
            CHECK(f.index2 == std::abs(m) + std::abs(l));
            CHECK(f.weight2 == (l == 0 ? -2 : 0));
        }
    CHECK(n > 30);
    CHECK_FALSE(PhiTable::derivable(3, -3));
    CHECK_FALSE(PhiTable::derivable(1, 4));
    try {
        phi.get(3, -3);
        FAIL("expected MissingPhi");
    } catch (const MissingPhi& e) {
        CHECK(e.m == 3);
        CHECK(e.l == -3);
    }
    for (int l = -2; l <= 2; ++l)
        if (l != 0) CHECK(phi.get(0, l).is_zero());
}

TEST_CASE("phi table: initial conditions in terms of F and G") {
    int Q = 4;
    PhiTable phi(Q);
    QSeries F = gen("F", Q), G = gen("G", Q);
    CHECK(compare(phi.get(1, 1), G - QSeries::constant(SRat(1), Q)).equal);
    CHECK(compare(phi.get(1, 0), F * GQ(GQ::i() * GQ(-1))).equal);
    CHECK(compare(phi.get(1, -1), (F * F).dq() * GQ(rat(-1, 2))).equal);
}

// ---------------------------------------------------------------------------

TEST_CASE("E^(r): vacuum and grading") {
    const auto& S = k3();
    PhiTable phi(3);
    EEngine E(S, phi, 2);
    QSeries F = gen("F", 4);
    NakMonomial one;
    CHECK(compare(E.element(0, one, one), (F * F * eta_and_delta(4).second).inverse().truncated(2)).equal);
    CHECK(E.op(1, one, one).is_zero());
    CHECK(E.op(-1, one, one).is_zero());
    // bidegree: <mu | E^(r) nu> vanishes unless |nu| - |mu| = r
    auto a = NakMonomial::parse(S, "p(-1,F) 1");
    CHECK(E.op(0, a, NakMonomial::parse(S, "p(-2,F) 1")).is_zero());
    CHECK(E.op(0, a, NakMonomial::parse(S, "p(-1,w) 1")).is_zero());
    CHECK_THROWS_AS(EEngine(S, phi, 3), std::invalid_argument);
}

TEST_CASE("E^Hilb worked examples for d <= 3") {
    const auto& S = k3();
    int Q = 2, f = S.index("F");
    PhiTable phi(Q + 1);
    EEngine E(S, phi, Q);
    QSeries F = gen("F", Q + 2), G = gen("G", Q + 2);
    ClassVec W{{S.index("B"), Rational(1)}, {f, Rational(1)}};
    for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        FockVector pf = FockVector::vacuum(), pw = FockVector::vacuum();
        for (int i = 0; i < d; ++i) pf = nak_apply(S, -1, f, pf), pw = nak_apply(S, -1, W, pw);
        CHECK(compare(ehilb_bracket(E, pf, pf), over_delta(F.pow(2 * d - 2), Q)).equal);
        QSeries w = over_delta(F.pow(2 * d - 2), Q + 2 * d);
        for (int i = 0; i < 2 * d; ++i) w = w.dq();
        CHECK(compare(ehilb_bracket(E, pw, pw), w.truncated(Q)).equal);
        CHECK(compare(ehilb_bracket(E, curve_class(S, f, d), divisor_class(S, f, d)), over_delta(G.pow(d - 1), Q))
                  .equal);
        if (d >= 2)
            CHECK(compare(ehilb_bracket(E, exceptional_curve(S, d), divisor_class(S, f, d)),
                          over_delta(G.dz() * G.pow(d - 2) * GQ(rat(-1, 2)), Q))
                      .equal);
    }
    FockVector IP = mono({{1, S.w()}, {1, S.e()}});
    FockVector pf2 = mono({{1, f}, {1, f}});
    CHECK(compare(ehilb_bracket(E, IP, IP), over_delta(F.dq() * F.dq(), Q)).equal);
    CHECK(compare(ehilb_bracket(E, pf2, IP), over_delta(F * F.dq(), Q)).equal);
    CHECK_THROWS_AS(ehilb_bracket(E, pf2, mono({{1, f}})), std::invalid_argument);
}

TEST_CASE("E^Hilb is self-adjoint and independent of the peeling order") {
    const auto& S = k3();
    PhiTable phi(3);
    EEngine mu_first(S, phi, 2), nu_first(S, phi, 2, EEngine::Peel::nu_first);
    std::mt19937 rng(5);
    for (int d = 1; d <= 3; ++d) {
        auto basis = nakajima_basis(S, d);
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        int tested = 0;
        for (int trial = 0; trial < 400 && tested < 40; ++trial) {
            const auto& a = basis[pick(rng)];
            const auto& b = basis[pick(rng)];
            if (a.kdeg(S) + b.kdeg(S) != 0) continue;
            ++tested;
            QSeries x = ehilb_bracket(mu_first, FockVector(a), FockVector(b));
            CHECK(compare(x, ehilb_bracket(mu_first, FockVector(b), FockVector(a))).equal);
            CHECK(compare(x, ehilb_bracket(nu_first, FockVector(a), FockVector(b))).equal);
        }
        CHECK(tested > 10);
    }
}

TEST_CASE("operator WDVV identities at d = 1 through q^4") {
    PhiTable phi(5);
    EEngine E(k3(), phi, 4);
    auto rep = wdvv_operator_check(E, 1, "full");
    CHECK(rep.ok);
    CHECK(rep.first_failure == "");
    CHECK(rep.checked > 0);
    CHECK_THROWS_AS(wdvv_operator_check(E, 1, "most"), std::invalid_argument);
}

TEST_CASE("operator WDVV identities at d = 2, sampled") {
    PhiTable phi(3);
    EEngine E(k3(), phi, 2);
    CHECK(wdvv_operator_check(E, 2, "sampled", 60).ok);
}

TEST_CASE("A1 restriction on F_1 and F_2") {
    PhiTable phi(1);
    auto rep = a1_restriction_check(k3(), phi, 2);
    CHECK(rep.ok);
    // y/(1+y)^2 against its expansion -s^2 - 2 s^4 - 3 s^6 ...
    SRat base = eb_element(k3(), 0, NakMonomial{}, NakMonomial{});
    CHECK(base.expand_at_zero(8) == L({{2, -1}, {4, -2}, {6, -3}, {8, -4}}));
    CHECK(eb_element(k3(), 1, NakMonomial{}, NakMonomial{}).is_zero());
}

TEST_CASE("underline degree") {
    const auto& S = orth();
    CHECK(underline_deg(S, S.index("F")) == -1);
    CHECK(underline_deg(S, S.index("W")) == 1);
    CHECK(underline_deg(S, S.index("g7")) == 0);
    CHECK(underline_deg(S, S.e()) == 0);
    CHECK(underline_deg(S, S.w()) == 0);
    CHECK_FALSE(underline_deg(k3(), k3().index("B")).has_value());
}

TEST_CASE("energy-2 contraction matches the diagonal of S x S") {
    const auto& S = orth();
    PhiTable phi(1);
    EEngine E(S, phi, 0);
    auto T = hilb2_two_point_table(E, 1);
    CHECK(T.entries.size() == 324);
    // Kunneth of the diagonal of Hilb^2: 1/2 sum G^{ac} G^{bd} (ab)(cd) - 1/2 sum G^{ab} p_{-2}(a) p_{-2}(b)
    std::optional<QSeries> sum;
    auto add = [&](const QSeries& x) { sum = sum ? *sum + x : x; };
    int n = S.size();
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            if (sgn(S.inv[a][c]) == 0) continue;
            add(ehilb_bracket(E, mono({{2, a}}), mono({{2, c}})) * GQ(-S.inv[a][c] / 2));
            for (int b = 0; b < n; ++b)
                for (int e = 0; e < n; ++e)
                    if (sgn(S.inv[b][e]) != 0)
                        add(ehilb_bracket(E, mono({{1, a}, {1, b}}), mono({{1, c}, {1, e}})) *
                            GQ(S.inv[a][c] * S.inv[b][e] / 2));
        }
    CHECK(compare(*sum, T.genus1).equal);
    // 3/y - 48 + 3y at q^-1
    CHECK(T.genus1[-1] == SRat(SLaurent::y_power(-1, 3) + SLaurent(-48) + SLaurent::y_power(1, 3)));
}
