#include "k3gw/wdvv.hpp"

#include "k3gw/jacobi.hpp"
#include "k3gw/linsolve.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace k3gw {

namespace {

using F = WTerm::Factor;

Rational R(long p, long q = 1) { return rat(p, q); }

const std::vector<std::vector<WTerm>> kEquations{
    // W1
    {{R(2), F::H, 0, 2, F::ONE, 0, 0},
     {R(2), F::I, 0, 1, F::ONE, 0, 0},
     {R(-1), F::H, 0, 0, F::T, 0, 3},
     {R(1, 2), F::H, 1, 0, F::T, 1, 2}},
    // W2
    {{R(2), F::H, 2, 0, F::ONE, 0, 0},
     {R(4), F::H, 0, 1, F::ONE, 0, 0},
     {R(2), F::I, 0, 0, F::ONE, 0, 0},
     {R(-1), F::H, 0, 0, F::T, 2, 1},
     {R(2), F::H, 1, 0, F::ONE, 0, 0},
     {R(1, 2), F::H, 1, 0, F::T, 3, 0}},
    // W3
    {{R(4), F::H, 0, 2, F::ONE, 0, 0},
     {R(2), F::I, 0, 1, F::ONE, 0, 0},
     {R(-1), F::I, 2, 0, F::ONE, 0, 0},
     {R(2), F::H, 1, 1, F::ONE, 0, 0},
     {R(1, 2), F::H, 1, 1, F::T, 3, 0},
     {R(-1), F::H, 0, 1, F::T, 2, 1},
     {R(-1, 2), F::H, 2, 0, F::T, 2, 1},
     {R(1), F::H, 1, 0, F::T, 1, 2}},
    // W4
    {{R(-8), F::H, 1, 1, F::ONE, 0, 0},
     {R(-4), F::H, 3, 0, F::ONE, 0, 0},
     {R(8), F::I, 1, 0, F::ONE, 0, 0},
     {R(2), F::H, 1, 0, F::T, 2, 1},
     {R(-4), F::H, 2, 0, F::ONE, 0, 0},
     {R(-1), F::H, 2, 0, F::T, 3, 0},
     {R(4), F::I, 0, 0, F::ONE, 0, 0},
     {R(1), F::I, 0, 0, F::T, 3, 0}},
    // W5
    {{R(-2), F::I, 0, 2, F::ONE, 0, 0},
     {R(1, 2), F::H, 2, 1, F::T, 2, 1},
     {R(-1), F::H, 1, 1, F::T, 1, 2},
     {R(-1, 2), F::H, 3, 0, F::T, 1, 2},
     {R(1), F::H, 2, 0, F::T, 0, 3},
     {R(-1, 2), F::I, 0, 1, F::T, 2, 1},
     {R(1, 2), F::I, 1, 0, F::T, 1, 2}},
    // W6
    {{R(2), F::H, 0, 3, F::ONE, 0, 0},
     {R(-1), F::I, 0, 2, F::ONE, 0, 0},
     {R(-1), F::H, 0, 1, F::T, 0, 3},
     {R(-1, 2), F::I, 0, 0, F::T, 0, 3},
     {R(1, 2), F::H, 1, 1, F::T, 1, 2}},
};

Pot pot_of(F f) {
    switch (f) {
        case F::H: return Pot::H;
        case F::I: return Pot::I;
        default: return Pot::T;
    }
}

const char* pot_name(Pot p) { return p == Pot::H ? "H" : p == Pot::I ? "I" : "T"; }

Rational ipow(long base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

struct Unknown {
    Pot p;
    int d, k;
};

// c + sum u_i x_i
struct Aff {
    Rational c{0};
    std::vector<Rational> u;
    bool is_const() const {
        for (const auto& x : u)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_zero() const { return sgn(c) == 0 && is_const(); }
};

class Evaluator {
public:
    Evaluator(const CoeffTable& t, std::vector<Unknown> unk = {}) : t_(t), unk_(std::move(unk)) {}

    std::size_t size() const { return unk_.size(); }

    Aff eval(int which, int d, int k) const {
        Aff acc;
        acc.u.assign(unk_.size(), Rational(0));
        for (const auto& term : wdvv_equation(which)) {
            if (term.y == F::ONE) {
                Rational w = term.coef * ipow(k, term.a) * ipow(d, term.b);
                if (sgn(w) == 0) continue;
                add(acc, lookup_or_throw(term.x, d, k), w);
                continue;
            }
            for (int l = 0; l <= d; ++l) {
                int jlo = CoeffTable::k_low(pot_of(term.x), l);
                int jhi = k - CoeffTable::k_low(Pot::T, d - l);
                for (int j = jlo; j <= jhi; ++j) {
                    Rational w = term.coef * ipow(j, term.a) * ipow(l, term.b) * ipow(k - j, term.c) *
                                 ipow(d - l, term.e);
                    if (sgn(w) == 0) continue;
                    auto X = lookup(term.x, l, j);
                    auto Y = lookup(term.y, d - l, k - j);
                    if ((X && X->is_zero()) || (Y && Y->is_zero())) continue;
                    if (!X) missing(term.x, l, j);
                    if (!Y) missing(term.y, d - l, k - j);
                    if (!X->is_const() && !Y->is_const())
                        throw std::logic_error("WDVV: product of two unknowns");
                    if (X->is_const())
                        add(acc, *Y, w * X->c);
                    else
                        add(acc, *X, w * Y->c);
                }
            }
        }
        return acc;
    }

private:
    std::optional<Aff> lookup(F f, int d, int k) const {
        Aff a;
        a.u.assign(unk_.size(), Rational(0));
        Pot p = pot_of(f);
        for (std::size_t i = 0; i < unk_.size(); ++i)
            if (unk_[i].p == p && unk_[i].d == d && unk_[i].k == k) {
                a.u[i] = 1;
                return a;
            }
        auto v = t_.get(p, d, k);
        if (!v) return std::nullopt;
        a.c = *v;
        return a;
    }
    Aff lookup_or_throw(F f, int d, int k) const {
        auto a = lookup(f, d, k);
        if (!a) missing(f, d, k);
        return *a;
    }
    [[noreturn]] static void missing(F f, int d, int k) {
        throw MissingCoefficient(std::string(pot_name(pot_of(f))) + "_{" + std::to_string(d) + "," +
                                 std::to_string(k) + "} not known");
    }
    static void add(Aff& acc, const Aff& x, const Rational& w) {
        acc.c += w * x.c;
        for (std::size_t i = 0; i < x.u.size(); ++i)
            if (sgn(x.u[i]) != 0) acc.u[i] += w * x.u[i];
    }

    const CoeffTable& t_;
    std::vector<Unknown> unk_;
};

// Solves the listed equations at (d,k) for the unknowns; columns in `spectators`
// must have zero coefficients and are not solved for.
void solve_step(CoeffTable& t, int d, int k, const std::vector<Unknown>& unk, const std::vector<int>& eqs,
                std::size_t spectators = 0) {
    Evaluator ev(t, unk);
    GQMatrix A;
    std::vector<GQ> b;
    std::size_t n = unk.size() - spectators;
    for (int w : eqs) {
        Aff a = ev.eval(w, d, k);
        for (std::size_t i = n; i < unk.size(); ++i)
            if (sgn(a.u[i]) != 0) throw std::logic_error("WDVV: unexpected dependence on an unsolved coefficient");
        std::vector<GQ> row;
        for (std::size_t i = 0; i < n; ++i) row.emplace_back(a.u[i]);
        A.push_back(row);
        b.emplace_back(-a.c);
    }
    auto sol = solve_linear(A, b);
    if (sol.status != LinearSolution::Status::unique)
        throw std::logic_error("WDVV: degenerate pivot at (" + std::to_string(d) + "," + std::to_string(k) + ")");
    for (std::size_t i = 0; i < n; ++i) t.table(unk[i].p)[{unk[i].d, unk[i].k}] = sol.x[i].re();
}

void general_step(CoeffTable& t, int d, int k) {
    auto [A, b] = step_system(t, d, k);
    GQ det = determinant(A);
    GQ expect(Rational(d * (2 * d - 3) * (k + 2 * d + 1)));
    if (det != expect)
        throw std::logic_error("WDVV: determinant " + det.str() + " differs from d(2d-3)(k+2d+1) = " + expect.str());
    if (det.is_zero())
        throw std::logic_error("WDVV: degenerate pivot at (" + std::to_string(d) + "," + std::to_string(k) + ")");
    auto sol = solve_linear(A, b);
    t.H[{d, k}] = sol.x[0].re();
    t.I[{d, k}] = sol.x[1].re();
    t.T[{d, k + 1}] = sol.x[2].re();
}

// d = 0: I_{0,0} from W2, then W3 and W4 for each k > 0; H_{0,0} stays open
void solve_row0(CoeffTable& t) {
    const Unknown h00{Pot::H, 0, 0};
    solve_step(t, 0, 0, {{Pot::I, 0, 0}, h00}, {2}, 1);
    for (int k = 1; k <= t.k_window; ++k) solve_step(t, 0, k, {{Pot::I, 0, k}, {Pot::H, 0, k}, h00}, {3, 4}, 1);
}

// H_{0,0} is left open by row 0 and by (1,-2); it enters (1,-1) through H_{0,0} T_{1,-1}, which is
// quadratic once T_{1,-1} is expressed through it.
CoeffTable with_h00(const CoeffTable& t, const Rational& x) {
    CoeffTable c = t;
    c.H[{0, 0}] = x;
    solve_step(c, 1, -2, {{Pot::H, 1, -2}, {Pot::I, 1, -2}, {Pot::T, 1, -1}}, {1, 2, 3, 4, 5, 6});
    general_step(c, 1, -1);
    return c;
}

std::vector<Rational> rational_roots(const Rational& a, const Rational& b, const Rational& c) {
    if (sgn(a) == 0) {
        if (sgn(b) == 0) return {};
        return {Rational(-c / b)};
    }
    Rational disc = b * b - 4 * a * c;
    if (sgn(disc) < 0) return {};
    mpz_class n = disc.get_num(), m = disc.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(m.get_mpz_t())) return {};
    Rational r(mpz_class(sqrt(n)), mpz_class(sqrt(m)));
    r.canonicalize();
    return {Rational((-b + r) / (2 * a)), Rational((-b - r) / (2 * a))};
}

bool residuals_vanish(const CoeffTable& t, int d, int k) {
    for (int w = 1; w <= 6; ++w)
        if (sgn(coefficient_residual(w, t, d, k)) != 0) return false;
    return true;
}

std::vector<Rational> h00_roots(const CoeffTable& t) {
    // residual at (1,-1) sampled at x = 0, 1, 2 and interpolated
    std::array<std::array<Rational, 3>, 6> r;
    for (int x = 0; x <= 2; ++x) {
        CoeffTable c = with_h00(t, Rational(x));
        for (int w = 1; w <= 6; ++w) r[w - 1][x] = coefficient_residual(w, c, 1, -1);
    }
    std::vector<Rational> candidates;
    for (const auto& v : r) {
        Rational a = (v[2] - 2 * v[1] + v[0]) / 2, b = v[1] - v[0] - a, c = v[0];
        if (sgn(a) == 0 && sgn(b) == 0) continue;
        candidates = rational_roots(a, b, c);
        break;
    }
    std::vector<Rational> roots;
    for (const auto& x : candidates) {
        CoeffTable c = with_h00(t, x);
        if (residuals_vanish(c, 1, -2) && residuals_vanish(c, 1, -1) &&
            std::find(roots.begin(), roots.end(), x) == roots.end())
            roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Both roots of the quadratic satisfy W1-W6 at (1,-2) and (1,-1); the q^0 y^0 coefficient of
// I = 4 dtau H - dz^2 H + E2 H reads I_{0,0} = H_{0,0} and picks one of them.
CoeffTable fix_h00(const CoeffTable& t, std::optional<Rational> forced) {
    auto roots = h00_roots(t);
    Rational want = forced ? *forced : t.I.at({0, 0});
    if (std::find(roots.begin(), roots.end(), want) == roots.end())
        throw std::logic_error("WDVV: H_{0,0} = " + rational_str(want) + " does not solve (1,-2) and (1,-1)");
    return with_h00(t, want);
}

QSeries rows_to_series(const std::map<std::pair<int, int>, Rational>& m, int q_max) {
    QSeries r(0, q_max);
    std::vector<std::vector<SLaurent::Term>> rows(q_max + 1);
    for (const auto& [dk, v] : m) {
        auto [d, k] = dk;
        if (d > q_max || sgn(v) == 0) continue;
        rows[d].emplace_back(2 * k, (k % 2 == 0) ? GQ(v) : GQ(-v));
    }
    for (int d = 0; d <= q_max; ++d) r.at(d) = SRat(SLaurent::from_terms(rows[d]));
    return r;
}

// coefficient of y^k in a Laurent polynomial in s
Rational y_coeff(const SLaurent& L, int k) {
    GQ c = L.coeff(2 * k);
    if (!c.is_real()) throw std::logic_error("non-real coefficient");
    return k % 2 == 0 ? c.re() : Rational(-c.re());
}

std::string at(int d, int k) { return "(d,k) = (" + std::to_string(d) + "," + std::to_string(k) + ")"; }

}  // namespace

int CoeffTable::k_low(Pot p, int d) {
    if (d > 0) return -2 * d;
    switch (p) {
        case Pot::H: return -1;
        case Pot::I: return 0;
        case Pot::T: return 1;
    }
    return 0;
}

std::optional<Rational> CoeffTable::get(Pot p, int d, int k) const {
    if (d < 0 || k < k_low(p, d)) return Rational(0);
    if (p == Pot::T && d == 0) return Rational(8) / ipow(k, 3);
    const auto& m = table(p);
    auto it = m.find({d, k});
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::map<std::pair<int, int>, Rational>& CoeffTable::table(Pot p) { return p == Pot::H ? H : p == Pot::I ? I : T; }

const std::map<std::pair<int, int>, Rational>& CoeffTable::table(Pot p) const {
    return p == Pot::H ? H : p == Pot::I ? I : T;
}

void WdvvReport::fail(const std::string& what, int d) {
    if (ok) first_failure = what;
    ok = false;
    if (!max_residual_order || d > *max_residual_order) max_residual_order = d;
}

const std::vector<WTerm>& wdvv_equation(int which) {
    if (which < 1 || which > 6) throw std::invalid_argument("wdvv_equation: index must be 1..6");
    return kEquations[which - 1];
}

std::pair<GQMatrix, std::vector<GQ>> step_system(const CoeffTable& t, int d, int k) {
    if (d < 1) throw std::invalid_argument("step_system: d must be >= 1");
    Evaluator ev(t, {{Pot::H, d, k}, {Pot::I, d, k}, {Pot::T, d, k + 1}});
    Aff w1 = ev.eval(1, d, k), w6 = ev.eval(6, d, k), w5 = ev.eval(5, d, k);
    Rational dd(d), d2(d * d);
    GQMatrix A(3);
    std::vector<GQ> b{GQ(-w1.c / dd), GQ(-w6.c / d2), GQ(-w5.c / d2)};
    for (int i = 0; i < 3; ++i) {
        A[0].emplace_back(w1.u[i] / dd);
        A[1].emplace_back(w6.u[i] / d2);
        A[2].emplace_back(w5.u[i] / d2);
    }
    return {A, b};
}

Rational coefficient_residual(int which, const CoeffTable& t, int d, int k) {
    return Evaluator(t).eval(which, d, k).c;
}

CoeffTable initial_conditions(int q_max, int k_window) {
    CoeffTable t;
    t.q_max = q_max;
    t.k_window = k_window;
    for (int k = 1; k <= k_window + 1; ++k) t.T[{0, k}] = Rational(8) / ipow(k, 3);
    for (int d = 1; d <= q_max; ++d) t.T[{d, -2 * d}] = Rational(2) / ipow(d, 3);
    t.H[{0, -1}] = 1;
    return t;
}

CoeffTable solve(int q_max, int k_window, std::optional<Rational> h00) {
    if (q_max < 1) throw std::invalid_argument("solve: q_max must be >= 1");
    if (k_window < 2 * q_max) throw std::invalid_argument("solve: k_window must be >= 2 q_max");
    CoeffTable t = initial_conditions(q_max, k_window);
    solve_row0(t);
    // (1,-2) and (1,-1) together fix H_{0,0}
    t = fix_h00(t, h00);
    for (int d = 1; d <= q_max; ++d)
        for (int k = (d == 1 ? 0 : -2 * d); k <= t.k_top(d); ++k) general_step(t, d, k);
    return t;
}

std::vector<Rational> h00_roots(int k_window) {
    CoeffTable t = initial_conditions(1, k_window);
    solve_row0(t);
    return h00_roots(t);
}

int assembled_q_max(const CoeffTable& t) {
    // rows are symmetric under k -> -k and vanish below -2d, so k_top(d) >= 2d covers a row
    int D = 0;
    while (D + 1 <= t.q_max && t.k_top(D + 1) >= 2 * (D + 1)) ++D;
    return D;
}

QSeries assemble(const CoeffTable& t, Pot p, int q_max) {
    if (p == Pot::T) throw std::invalid_argument("assemble: T has infinitely many terms at q^0");
    return rows_to_series(t.table(p), q_max);
}

QSeries t_derivative(int z_derivs, int q) {
    auto g = [&](const std::string& n) { return generator(n, q).series; };
    switch (z_derivs) {
        case 3: return QSeries::constant(SRat(-4), q) - g("J2_1") * GQ(8) - g("G_1") * GQ(16);
        case 2: return g("J2_2") * GQ(-4) - g("G_2") * GQ(8);
        case 1: return g("J2_3") * GQ(rat(-8, 3)) - g("G_3") * GQ(rat(16, 3));
        case 0: return g("J2_4") * GQ(-2) - g("G_4") * GQ(4) + g("E4") * GQ(rat(1, 20));
        default: throw std::invalid_argument("t_derivative: third derivatives only");
    }
}

WdvvReport residual_check(const CoeffTable& t) {
    WdvvReport rep;
    Evaluator ev(t);
    long skipped = 0;
    for (int d = 0; d <= t.q_max; ++d)
        for (int k = -2 * d - 2; k <= t.k_top(d) + 1; ++k)
            for (int w = 1; w <= 6; ++w) {
                try {
                    Rational r = ev.eval(w, d, k).c;
                    ++rep.checked;
                    if (sgn(r) != 0) rep.fail("W" + std::to_string(w) + " residual " + rational_str(r) + " at " + at(d, k), d);
                } catch (const MissingCoefficient&) {
                    ++skipped;
                }
            }
    rep.notes.push_back(std::to_string(rep.checked) + " coefficient equations checked, " + std::to_string(skipped) +
                        " outside the solved window");
    return rep;
}

WdvvReport function_level_check(const QSeries& H, const QSeries& I) {
    WdvvReport rep;
    int q = std::min(H.q_max(), I.q_max());
    QSeries Hq = H.truncated(q), Iq = I.truncated(q);
    std::map<int, QSeries> tder;
    for (int c = 0; c <= 3; ++c) tder[c] = t_derivative(c, q);
    for (int w = 1; w <= 6; ++w) {
        QSeries sum(0, q);
        for (const auto& term : wdvv_equation(w)) {
            QSeries x = term.x == F::H ? Hq : Iq;
            for (int i = 0; i < term.a; ++i) x = x.dz();
            for (int i = 0; i < term.b; ++i) x = x.dq();
            if (term.y == F::T) x = x * tder.at(term.c);
            sum += x * GQ(term.coef);
        }
        ++rep.checked;
        for (int n = sum.q_min(); n <= sum.q_max(); ++n)
            if (!sum[n].is_zero()) rep.fail("W" + std::to_string(w) + " nonzero at q^" + std::to_string(n), n);
    }
    rep.notes.push_back("function-level W1-W6 checked through q^" + std::to_string(q));
    return rep;
}

WdvvReport trelation_check(const CoeffTable& t) {
    WdvvReport rep;
    for (int zd = 0; zd <= 3; ++zd) {
        QSeries rhs = t_derivative(zd, t.q_max);
        for (int d = 0; d <= t.q_max; ++d) {
            int khi = t.k_top(d) + 1;
            SLaurent row = rhs[d].expand_at_zero(2 * khi + 2);
            for (int k = -2 * d - 2; k <= khi; ++k) {
                auto v = t.get(Pot::T, d, k);
                if (!v) continue;
                Rational lhs = ipow(k, zd) * ipow(d, 3 - zd) * *v;
                ++rep.checked;
                if (lhs != y_coeff(row, k))
                    rep.fail("T-relation with " + std::to_string(zd) + " z-derivatives fails at " + at(d, k), d);
            }
        }
    }
    return rep;
}

WdvvReport ito_h_check(const CoeffTable& t) {
    WdvvReport rep;
    int q = assembled_q_max(t);
    QSeries H = assemble(t, Pot::H, q), I = assemble(t, Pot::I, q);
    QSeries rhs = H.dq() * GQ(4) - H.dz().dz() + generator("E2", q).series * H;
    ++rep.checked;
    auto c = compare(I, rhs);
    if (!c.equal) rep.fail("I = 4 dtau H - dz^2 H + E2 H fails at q^" + std::to_string(*c.first_mismatch), *c.first_mismatch);
    for (const auto& [dk, v] : t.H) {
        auto other = t.get(Pot::H, dk.first, -dk.second);
        if (!other) continue;
        ++rep.checked;
        if (*other != v) rep.fail("H_{d,k} != H_{d,-k} at " + at(dk.first, dk.second), dk.first);
    }
    return rep;
}

Rational closed_form_T(int d, int k) {
    if (d == 0) return k >= 1 ? Rational(8) / ipow(k, 3) : Rational(0);
    Rational v = 0;
    if (k == 0) {
        for (int m = 1; m <= d; ++m)
            if (d % m == 0) v += Rational(12) / ipow(m, 3);
        return v;
    }
    int m = std::abs(k);
    if (d % m == 0) v += Rational(8) / ipow(m, 3);
    if (m % 2 == 0) {
        int h = m / 2;
        if (d % h == 0 && (d / h) % 2 == 1) v += Rational(2) / ipow(h, 3);
    }
    return v;
}

WdvvReport verify_closed_forms(const CoeffTable& t) {
    WdvvReport rep;
    QSeries F = generator("F", t.q_max).series;
    QSeries H = F * F, I = generator("G", t.q_max).series * GQ(2);
    std::map<int, SLaurent> hrow, irow;
    for (int d = 0; d <= t.q_max; ++d) {
        hrow[d] = H[d].to_laurent();
        irow[d] = I[d].to_laurent();
    }
    for (Pot p : {Pot::H, Pot::I, Pot::T})
        for (const auto& [dk, v] : t.table(p)) {
            auto [d, k] = dk;
            if (d > t.q_max) continue;
            Rational expect = p == Pot::T ? closed_form_T(d, k) : y_coeff(p == Pot::H ? hrow[d] : irow[d], k);
            ++rep.checked;
            if (expect != v)
                rep.fail(std::string(pot_name(p)) + " mismatch at " + at(d, k) + ": solved " + rational_str(v) +
                             ", closed form " + rational_str(expect),
                         d);
        }
    return rep;
}

std::string to_csv(const CoeffTable& t) {
    std::set<std::pair<int, int>> keys;
    for (Pot p : {Pot::H, Pot::I, Pot::T})
        for (const auto& kv : t.table(p)) keys.insert(kv.first);
    std::ostringstream os;
    os << "d,k,H,I,T\n";
    for (auto [d, k] : keys) {
        os << d << "," << k;
        for (Pot p : {Pot::H, Pot::I, Pot::T}) {
            auto v = t.get(p, d, k);
            os << "," << (v ? rational_str(*v) : "");
        }
        os << "\n";
    }
    return os.str();
}

Json to_json(const CoeffTable& t) {
    Json j;
    j["q_max"] = t.q_max;
    j["k_window"] = t.k_window;
    Json rows = Json::array();
    std::set<std::pair<int, int>> keys;
    for (Pot p : {Pot::H, Pot::I, Pot::T})
        for (const auto& kv : t.table(p)) keys.insert(kv.first);
    for (auto [d, k] : keys) {
        Json r{{"d", d}, {"k", k}};
        for (Pot p : {Pot::H, Pot::I, Pot::T}) {
            auto v = t.get(p, d, k);
            r[pot_name(p)] = v ? Json(rational_str(*v)) : Json(nullptr);
        }
        rows.push_back(r);
    }
    j["coefficients"] = rows;
    int q = assembled_q_max(t);
    j["H"] = to_json(assemble(t, Pot::H, q));
    j["I"] = to_json(assemble(t, Pot::I, q));
    return j;
}

}  // namespace k3gw
