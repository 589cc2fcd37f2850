#include "k3gw/jacobi.hpp"

#include "k3gw/linsolve.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace k3gw {

using Kind = GeneratorName::Kind;

Rational bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rational> B{Rational(1)};
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(B.size()) <= n) {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        int m = static_cast<int>(B.size());
        Rational acc = 0;
        mpz_class binom = 1;
        for (int k = 0; k < m; ++k) {
            acc += Rational(binom) * B[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        B.push_back(-acc / Rational(m + 1));
    }
    return B[n];
}

namespace {

const std::map<std::string, Kind> kSimpleNames{
    {"F", Kind::F},         {"K", Kind::K},           {"J1", Kind::J1},         {"wp", Kind::WP},
    {"wp_prime", Kind::WP_PRIME}, {"Eta", Kind::ETA}, {"Delta", Kind::DELTA},   {"Theta1", Kind::THETA1},
    {"G", Kind::G_FORM},    {"Theta_D4", Kind::THETA_D4}};

int parse_index(const std::string& text, const std::string& full) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size() || v < 1) throw std::invalid_argument("unknown generator: " + full);
    return v;
}

// coefficients of prod_{n>=1} (1 - q^{step n})^power through q^{q_max}
std::vector<Rational> euler_product(int power, int q_max, int step = 1) {
    std::vector<Rational> c(q_max + 1, Rational(0));
    c[0] = 1;
    for (int m = step; m <= q_max; m += step)
        for (int rep = 0; rep < std::abs(power); ++rep) {
            if (power > 0)
                for (int k = q_max; k >= m; --k) c[k] -= c[k - m];
            else
                for (int k = m; k <= q_max; ++k) c[k] += c[k - m];
        }
    return c;
}

QSeries from_rationals(int q_min, const std::vector<Rational>& v) {
    std::vector<SRat> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(GQ(x));
    return QSeries(q_min, std::move(out));
}

QSeries from_laurent(int q_min, const std::vector<SLaurent>& v) {
    std::vector<SRat> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return QSeries(q_min, std::move(out));
}

// y^k = (-1)^k s^{2k}
SLaurent y_pow(int k, const GQ& c = GQ(1)) { return SLaurent::y_power(k, c); }
// (-y)^k = s^{2k}
SLaurent my_pow(int k, const GQ& c = GQ(1)) { return SLaurent::monomial(2 * k, c); }

GQ ipow_rational(const Rational& base, int e) {
    Rational r = 1;
    for (int k = 0; k < e; ++k) r *= base;
    return GQ(r);
}

template <class Fn>
void for_divisors(int d, Fn fn) {
    for (int m = 1; m <= d; ++m)
        if (d % m == 0) fn(m);
}

// F: i (s^{-1} - s) prod (1 - s^2 q^m)(1 - s^{-2} q^m) / (1 - q^m)^2
std::vector<SLaurent> theta_numerator(int q_max) {
    std::vector<SLaurent> P(q_max + 1);
    P[0] = SLaurent(1);
    for (int m = 1; m <= q_max; ++m)
        for (int n = q_max; n >= m; --n) {
            SLaurent a = P[n - m].shifted(2) + P[n - m].shifted(-2);
            P[n] -= a;
            if (n >= 2 * m) P[n] += P[n - 2 * m];
        }
    return P;
}

QSeries f_series(int q_max, int eta_power_extra) {
    auto P = theta_numerator(q_max);
    auto E = euler_product(-2 + eta_power_extra, q_max);
    SLaurent lead = SLaurent::from_terms({{-1, GQ::i()}, {1, -GQ::i()}});
    std::vector<SLaurent> out(q_max + 1);
    for (int n = 0; n <= q_max; ++n) {
        SLaurent acc;
        for (int k = 0; k <= n; ++k)
            if (sgn(E[k]) != 0) acc += P[n - k] * GQ(E[k]);
        out[n] = acc * lead;
    }
    return from_laurent(0, out);
}

QSeries eisenstein(int k, int q_max);

QSeries eisenstein_sum(int k, int q_max) {
    Rational f = Rational(4 * k) / bernoulli(2 * k);
    std::vector<Rational> c(q_max + 1, Rational(0));
    c[0] = 1;
    for (int d = 1; d <= q_max; ++d) {
        mpz_class sigma = 0;
        for_divisors(d, [&](int m) {
            mpz_class t;
            mpz_ui_pow_ui(t.get_mpz_t(), m, 2 * k - 1);
            sigma += t;
        });
        c[d] = -f * Rational(sigma);
    }
    return from_rationals(0, c);
}

QSeries j1_series(int q_max) {
    QSeries r(0, q_max);
    // y/(1+y) - 1/2 = s^2 / ((s-1)(s+1)) - 1/2
    r.at(0) = SRat(SLaurent::monomial(2), {-1, 0, -1, 0}) + SRat(GQ(rat(-1, 2)));
    for (int d = 1; d <= q_max; ++d) {
        SLaurent acc;
        for_divisors(d, [&](int m) { acc += my_pow(-m) - my_pow(m); });
        r.at(d) = SRat(acc);
    }
    return r;
}

QSeries wp_series(int q_max) {
    QSeries r(0, q_max);
    // 1/12 - y/(1+y)^2 = 1/12 + s^2/((s-1)^2 (s+1)^2)
    r.at(0) = SRat(GQ(rat(1, 12))) + SRat(SLaurent::monomial(2), {-2, 0, -2, 0});
    for (int d = 1; d <= q_max; ++d) {
        SLaurent acc;
        for_divisors(d, [&](int m) { acc += (my_pow(m) + my_pow(-m) + SLaurent(-2)) * GQ(m); });
        r.at(d) = SRat(acc);
    }
    return r;
}

QSeries wp_prime_series(int q_max) {
    QSeries r(0, q_max);
    // y(y-1)/(1+y)^3 = -s^2 (s^2 + 1) / ((s-1)^3 (s+1)^3)
    r.at(0) = SRat(SLaurent::from_terms({{2, GQ(-1)}, {4, GQ(-1)}}), {-3, 0, -3, 0});
    for (int d = 1; d <= q_max; ++d) {
        SLaurent acc;
        for_divisors(d, [&](int m) { acc += (my_pow(m) - my_pow(-m)) * GQ(m * m); });
        r.at(d) = SRat(acc);
    }
    return r;
}

QSeries g_form_series(int q_max) {
    QSeries br(0, q_max);
    // y/(1+y)^2 = -s^2/((s-1)^2 (s+1)^2)
    br.at(0) = SRat(SLaurent::monomial(2, GQ(-1)), {-2, 0, -2, 0});
    for (int d = 1; d <= q_max; ++d) {
        SLaurent acc;
        for_divisors(d, [&](int m) { acc -= (my_pow(-m) + my_pow(m)) * GQ(m); });
        br.at(d) = SRat(acc);
    }
    QSeries F = f_series(q_max, 0);
    return F * F * br;
}

QSeries j2_series(int n, int q_max) {
    QSeries r(0, q_max);
    SRat c0(GQ(bernoulli(n)));
    // y/(y-1) = s^2 / ((s-i)(s+i))
    if (n == 1) c0 += SRat(SLaurent::monomial(2), {0, -1, 0, -1});
    r.at(0) = c0;
    GQ sign = n % 2 == 0 ? GQ(1) : GQ(-1);
    for (int d = 1; d <= q_max; ++d) {
        SLaurent acc;
        for_divisors(d, [&](int k) {
            int rr = d / k;
            GQ c = ipow_rational(Rational(rr), n - 1) * GQ(-n);
            acc += y_pow(k, c) + y_pow(-k, c * sign);
        });
        r.at(d) = SRat(acc);
    }
    return r;
}

// over the doubled grid: index t means q^{t/2}
QSeries j3_series(int n, int q_max) {
    int T = 2 * q_max;
    QSeries r(0, T);
    r.at(0) = SRat(GQ(-bernoulli(n) * (Rational(1) - Rational(1) / Rational(mpz_class(1) << (n - 1)))));
    GQ sign = n % 2 == 0 ? GQ(1) : GQ(-1);
    // exponent k (2r - 1) in q^{1/2}
    for (int k = 1; k <= T; ++k)
        for (int rr = 1; k * (2 * rr - 1) <= T; ++rr) {
            GQ c = ipow_rational(Rational(rr) - rat(1, 2), n - 1) * GQ(-n);
            SRat term(y_pow(k, c) + y_pow(-k, c * sign));
            r.at(k * (2 * rr - 1)) += term;
        }
    return r;
}

QSeries gn_series(int n, int q_max) {
    QSeries r(0, q_max);
    r.at(0) = SRat(GQ(-bernoulli(n) * (Rational(1) - Rational(1) / Rational(mpz_class(1) << (n - 1)))));
    GQ sign = n % 2 == 0 ? GQ(1) : GQ(-1);
    for (int k = 1; k <= q_max; ++k)
        for (int rr = 1; k * (2 * rr - 1) <= q_max; ++rr) {
            GQ c = ipow_rational(Rational(rr) - rat(1, 2), n - 1) * GQ(-n);
            SRat term(y_pow(2 * k, c) + y_pow(-2 * k, c * sign));
            r.at(k * (2 * rr - 1)) += term;
        }
    return r;
}

QSeries eisenstein(int k, int q_max) {
    if (k != 3) return eisenstein_sum(k, q_max);
    // E6 from (wp')^2 = 4 wp^3 - E4 wp / 12 + E6 / 216
    QSeries wp = wp_series(q_max), wpp = wp_prime_series(q_max);
    QSeries rhs = wpp * wpp - wp * wp * wp * GQ(4) + wp * eisenstein_sum(2, q_max) * GQ(rat(1, 12));
    rhs *= GQ(216);
    for (const auto& c : rhs.coeffs())
        if (!c.is_zero() && !(c.num().is_constant() && c.ex() == SRat::Exps{0, 0, 0, 0}))
            throw std::logic_error("E6: Weierstrass cubic did not produce a constant series");
    return rhs;
}

// enumerate x in Z^4 with <x,x> + x1 <= q_max; callback gets (n, c = 2x1 - x2 - x3 - x4)
template <class Fn>
void d4_points(int q_max, Fn fn) {
    // smallest eigenvalue of the Gram matrix is 2 - sqrt(3)
    const double lam = 2.0 - std::sqrt(3.0);
    int B = static_cast<int>(std::ceil(std::sqrt((q_max + 1.0) / lam))) + 2;
    for (int x1 = -B; x1 <= B; ++x1)
        for (int x2 = -B; x2 <= B; ++x2)
            for (int x3 = -B; x3 <= B; ++x3)
                for (int x4 = -B; x4 <= B; ++x4) {
                    long qf = 2L * (x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4) - 2L * x1 * (x2 + x3 + x4);
                    long n = qf + x1;
                    if (n <= q_max) fn(static_cast<int>(n), 2 * x1 - x2 - x3 - x4);
                }
}

}  // namespace

std::string GeneratorName::str() const {
    switch (kind) {
        case Kind::E2k: return "E" + std::to_string(2 * n);
        case Kind::J2n: return "J2_" + std::to_string(n);
        case Kind::J3n: return "J3_" + std::to_string(n);
        case Kind::Gn: return "G_" + std::to_string(n);
        default:
            for (const auto& [k, v] : kSimpleNames)
                if (v == kind) return k;
    }
    return "?";
}

GeneratorName GeneratorName::parse(const std::string& text) {
    auto it = kSimpleNames.find(text);
    if (it != kSimpleNames.end()) return {it->second, 0};
    if (text.rfind("J2_", 0) == 0) return {Kind::J2n, parse_index(text.substr(3), text)};
    if (text.rfind("J3_", 0) == 0) return {Kind::J3n, parse_index(text.substr(3), text)};
    if (text.rfind("G_", 0) == 0) return {Kind::Gn, parse_index(text.substr(2), text)};
    if (text.size() > 1 && text[0] == 'E') {
        int w = parse_index(text.substr(1), text);
        if (w % 2 != 0) throw std::invalid_argument("unknown generator: " + text);
        return {Kind::E2k, w / 2};
    }
    throw std::invalid_argument("unknown generator: " + text);
}

QSeries PrefixedSeries::to_qseries() const {
    if (q_scale != 1 || q_shift.get_den() != 1)
        throw std::domain_error("series has a non-integral q-prefactor; keep it as a prefixed series");
    return series.shifted(static_cast<int>(q_shift.get_num().get_si()));
}

PrefixedSeries PrefixedSeries::operator*(const PrefixedSeries& o) const {
    if (q_scale != o.q_scale) throw std::invalid_argument("prefixed series on different q-grids");
    return {q_shift + o.q_shift, q_scale, series * o.series};
}

PrefixedSeries PrefixedSeries::operator*(const GQ& c) const { return {q_shift, q_scale, series * c}; }

std::optional<int> QuasiJacobiForm::measured_pole_order(int w_order) const {
    auto v = substitute_w(series, w_order).w_valuation();
    if (!v) return std::nullopt;
    return -*v;
}

bool QuasiJacobiForm::holomorphic_at_zero(int w_order) const {
    auto p = measured_pole_order(w_order);
    return !p || *p <= 0;
}

QuasiJacobiForm operator*(const QuasiJacobiForm& a, const QuasiJacobiForm& b) {
    if (a.q_scale != b.q_scale) throw std::invalid_argument("forms on different q-grids");
    QuasiJacobiForm r;
    r.series = a.series * b.series;
    r.weight2 = a.weight2 + b.weight2;
    r.index2 = a.index2 + b.index2;
    r.pole_order_z0 = a.pole_order_z0 + b.pole_order_z0;
    r.q_shift = a.q_shift + b.q_shift;
    r.q_scale = a.q_scale;
    return r;
}

QuasiJacobiForm operator*(const GQ& c, const QuasiJacobiForm& a) {
    QuasiJacobiForm r = a;
    r.series *= c;
    r.generator.reset();
    return r;
}

QuasiJacobiForm operator+(const QuasiJacobiForm& a, const QuasiJacobiForm& b) {
    if (a.weight2 != b.weight2 || a.index2 != b.index2 || a.q_shift != b.q_shift || a.q_scale != b.q_scale)
        throw std::invalid_argument("adding quasi-Jacobi forms of different bigrading");
    QuasiJacobiForm r = a;
    r.series += b.series;
    r.pole_order_z0 = std::max(a.pole_order_z0, b.pole_order_z0);
    r.generator.reset();
    return r;
}

QuasiJacobiForm operator-(const QuasiJacobiForm& a, const QuasiJacobiForm& b) { return a + GQ(-1) * b; }

PrefixedSeries eta_quotient(const std::vector<std::pair<int, int>>& factors, int q_max) {
    if (q_max < 0) throw std::invalid_argument("eta_quotient: q_max must be >= 0");
    PrefixedSeries r{Rational(0), 1, QSeries::constant(SRat(1), q_max)};
    for (auto [m, p] : factors) {
        if (m < 1) throw std::invalid_argument("eta_quotient: scale must be positive");
        r.q_shift += rat(m * p, 24);
        r.series = r.series * from_rationals(0, euler_product(p, q_max, m));
    }
    return r;
}

std::pair<PrefixedSeries, QSeries> eta_and_delta(int q_max) {
    if (q_max < 1) throw std::invalid_argument("eta_and_delta: q_max must be >= 1");
    PrefixedSeries eta = eta_quotient({{1, 1}}, q_max);
    QSeries delta = from_rationals(1, euler_product(24, q_max - 1));
    return {eta, delta};
}

PrefixedSeries theta_d4(int q_max) {
    if (q_max < 1) throw std::invalid_argument("theta_d4: q_max must be >= 1");
    std::vector<std::map<int, GQ>> acc(q_max + 1);
    // exp(-2 pi i <x + alpha/2, z e1 + e1/2>) = -i (-1)^c s^{-2c-1}
    d4_points(q_max, [&](int n, int c) {
        GQ v = (c % 2 == 0) ? -GQ::i() : GQ::i();
        acc[n][-2 * c - 1] += v;
    });
    std::vector<SLaurent> rows(q_max + 1);
    for (int n = 0; n <= q_max; ++n) {
        std::vector<SLaurent::Term> t(acc[n].begin(), acc[n].end());
        rows[n] = SLaurent::from_terms(t);
    }
    return {rat(1, 2), 1, from_laurent(0, rows)};
}

PrefixedSeries d4_lattice_sum(int q_max) {
    std::vector<Rational> c(q_max + 1, Rational(0));
    d4_points(q_max, [&](int n, int) { c[n] += 1; });
    return {rat(1, 2), 1, from_rationals(0, c)};
}

QuasiJacobiForm generator(const GeneratorName& name, int q_max) {
    if (q_max < 0) throw std::invalid_argument("generator: q_max must be >= 0");
    if ((name.kind == Kind::E2k || name.kind == Kind::J2n || name.kind == Kind::J3n || name.kind == Kind::Gn) &&
        name.n < 1)
        throw std::invalid_argument("generator: index must be >= 1");

    static std::mutex mu;
    static std::map<std::pair<std::string, int>, QuasiJacobiForm> cache;
    auto key = std::make_pair(name.str(), q_max);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    QuasiJacobiForm f;
    f.generator = name;
    switch (name.kind) {
        case Kind::F:
        case Kind::K:
            f.series = f_series(q_max, 0);
            if (name.kind == Kind::K) f.series *= GQ::i();
            f.weight2 = -2;
            f.index2 = 1;
            break;
        case Kind::J1:
            f.series = j1_series(q_max);
            f.weight2 = 2;
            f.pole_order_z0 = 1;
            break;
        case Kind::WP:
            f.series = wp_series(q_max);
            f.weight2 = 4;
            f.pole_order_z0 = 2;
            break;
        case Kind::WP_PRIME:
            f.series = wp_prime_series(q_max);
            f.weight2 = 6;
            f.pole_order_z0 = 3;
            break;
        case Kind::E2k:
            f.series = eisenstein(name.n, q_max);
            f.weight2 = 4 * name.n;
            break;
        case Kind::J2n:
            f.series = j2_series(name.n, q_max);
            f.weight2 = 2 * name.n;
            break;
        case Kind::J3n:
            f.series = j3_series(name.n, q_max);
            f.q_scale = 2;
            f.weight2 = 2 * name.n;
            break;
        case Kind::Gn:
            f.series = gn_series(name.n, q_max);
            f.weight2 = 2 * name.n;
            break;
        case Kind::ETA: {
            auto e = eta_quotient({{1, 1}}, q_max);
            f.series = e.series;
            f.q_shift = e.q_shift;
            f.weight2 = 1;
            break;
        }
        case Kind::DELTA:
            f.series = eta_and_delta(std::max(1, q_max)).second.truncated(q_max);
            f.weight2 = 24;
            break;
        case Kind::THETA1:
            f.series = f_series(q_max, 3);
            f.q_shift = rat(1, 8);
            f.weight2 = 1;
            f.index2 = 1;
            break;
        case Kind::G_FORM:
            f.series = g_form_series(q_max);
            f.index2 = 2;
            break;
        case Kind::THETA_D4: {
            auto t = theta_d4(std::max(1, q_max));
            f.series = t.series.truncated(q_max);
            f.q_shift = t.q_shift;
            f.weight2 = 4;
            f.index2 = 1;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, f);
    return f;
}

QuasiJacobiForm generator(const std::string& name, int q_max) { return generator(GeneratorName::parse(name), q_max); }

QSeries closure_relation(Kind kind, Var var, int q_max) {
    auto g = [&](Kind k, int n = 0) { return generator(GeneratorName{k, n}, q_max).series; };
    QSeries J1 = g(Kind::J1), wp = g(Kind::WP), wpp = g(Kind::WP_PRIME);
    QSeries E2 = g(Kind::E2k, 1), E4 = g(Kind::E2k, 2);
    switch (kind) {
        case Kind::F:
        case Kind::K: {
            QSeries F = g(kind);
            if (var == Var::z) return J1 * F;
            return F * (J1 * J1 * GQ(rat(1, 2)) - wp * GQ(rat(1, 2)) - E2 * GQ(rat(1, 12)));
        }
        case Kind::J1:
            if (var == Var::z) return E2 * GQ(rat(1, 12)) - wp;
            return J1 * (E2 * GQ(rat(1, 12)) - wp) - wpp * GQ(rat(1, 2));
        case Kind::WP:
            if (var == Var::z) return wpp;
            return wp * wp * GQ(2) + wp * E2 * GQ(rat(1, 6)) + J1 * wpp - E4 * GQ(rat(1, 36));
        case Kind::WP_PRIME:
            if (var == Var::z) return wp * wp * GQ(6) - E4 * GQ(rat(1, 24));
            return J1 * wp * wp * GQ(6) - J1 * E4 * GQ(rat(1, 24)) + wp * wpp * GQ(3) + E2 * wpp * GQ(rat(1, 4));
        default:
            throw std::invalid_argument("closure_relation: no relation for this generator");
    }
}

QuasiJacobiForm diff(const QuasiJacobiForm& form, Var var) {
    QuasiJacobiForm r = form;
    r.generator.reset();
    if (var == Var::z) {
        r.series = form.series.dz();
        r.weight2 += 2;
        if (r.pole_order_z0 > 0) ++r.pole_order_z0;
    } else {
        // q d/dq of q^{shift} sum c_n q^{n/scale}
        QSeries s = form.series;
        for (int n = s.q_min(); n <= s.q_max(); ++n) {
            Rational f = form.q_shift + rat(n, form.q_scale);
            s.at(n) *= GQ(f);
        }
        r.series = s;
        r.weight2 += 4;
    }
    if (form.generator) {
        Kind k = form.generator->kind;
        if (k == Kind::F || k == Kind::K || k == Kind::J1 || k == Kind::WP || k == Kind::WP_PRIME) {
            QSeries rhs = closure_relation(k, var, form.series.q_max());
            if (!compare(r.series, rhs).equal)
                throw std::logic_error("closure relation failed for " + form.generator->str());
        }
    }
    return r;
}

WSeries f_u_expansion(int q_max, int u_order) {
    if (u_order < 1) throw std::invalid_argument("f_u_expansion: u_order must be >= 1");
    if (q_max < 0) throw std::invalid_argument("f_u_expansion: q_max must be >= 0");
    WSeries X(0, u_order - 1, 0, q_max);
    for (int k = 1; 2 * k <= u_order - 1; ++k) {
        Rational fact = 1;
        for (int j = 2; j <= 2 * k; ++j) fact *= j;
        Rational c = bernoulli(2 * k) / (Rational(2 * k) * fact);
        if (k % 2 == 1) c = -c;
        QSeries E = generator(GeneratorName{Kind::E2k, k}, q_max).series;
        for (int n = 0; n <= q_max; ++n) X.at(2 * k, n) = E[n].num().coeff(0) * GQ(c);
    }
    WSeries U(1, u_order, 0, q_max);
    U.at(1, 0) = GQ(1);
    return U * X.exp();
}

int QJacMonomial::weight() const {
    int w = 0;
    for (int g = 0; g < 6; ++g) w += e[g] * kQJacWeights[g];
    return w;
}

std::string QJacMonomial::str() const {
    static const char* names[6] = {"F", "E2", "E4", "J1", "wp", "wp'"};
    std::string out;
    for (int g = 0; g < 6; ++g) {
        if (e[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[g];
        if (e[g] > 1) out += "^" + std::to_string(e[g]);
    }
    return out.empty() ? "1" : out;
}

std::vector<QJacMonomial> qjac_monomials(int weight_max, int index2) {
    if (index2 < 0) throw std::invalid_argument("qjac_monomials: negative index");
    std::vector<QJacMonomial> out;
    int budget = weight_max + index2;  // weight left for the index-0 generators
    if (budget < 0) return out;
    for (int a = 0; 2 * a <= budget; ++a)
        for (int b = 0; 2 * a + 4 * b <= budget; ++b)
            for (int c = 0; 2 * a + 4 * b + c <= budget; ++c)
                for (int d = 0; 2 * a + 4 * b + c + 2 * d <= budget; ++d)
                    for (int e = 0; 2 * a + 4 * b + c + 2 * d + 3 * e <= budget; ++e)
                        out.push_back(QJacMonomial{{index2, a, b, c, d, e}});
    return out;
}

namespace {

class MonomialEvaluator {
public:
    explicit MonomialEvaluator(int q_max) : q_max_(q_max) {
        const GeneratorName names[6] = {{Kind::F, 0},  {Kind::E2k, 1}, {Kind::E2k, 2},
                                        {Kind::J1, 0}, {Kind::WP, 0},  {Kind::WP_PRIME, 0}};
        for (int g = 0; g < 6; ++g) pows_[g].push_back(QSeries::constant(SRat(1), q_max)),
                                    pows_[g].push_back(generator(names[g], q_max).series);
    }
    const QSeries& power(int g, int k) {
        while (static_cast<int>(pows_[g].size()) <= k) pows_[g].push_back(pows_[g].back() * pows_[g][1]);
        return pows_[g][k];
    }
    QSeries eval(const QJacMonomial& m) {
        std::optional<QSeries> r;
        for (int g = 0; g < 6; ++g) {
            if (m.e[g] == 0) continue;
            r = r ? *r * power(g, m.e[g]) : power(g, m.e[g]);
        }
        return r ? *r : QSeries::constant(SRat(1), q_max_);
    }

private:
    int q_max_;
    std::array<std::vector<QSeries>, 6> pows_;
};

// equations sum_j x_j m_j[n] = t[n], cleared of denominators and split by s-power
void order_equations(const SRat& t, const std::vector<const SRat*>& ms, GQMatrix& rows, std::vector<GQ>& rhs) {
    SRat::Exps lo{0, 0, 0, 0};
    bool any = false;
    auto upd = [&](const SRat& x) {
        if (x.is_zero()) return;
        for (int r = 0; r < 4; ++r) lo[r] = any ? std::min(lo[r], x.ex()[r]) : x.ex()[r];
        any = true;
    };
    upd(t);
    for (auto* m : ms) upd(*m);
    if (!any) return;
    auto clear = [&](const SRat& x) {
        if (x.is_zero()) return SLaurent();
        SLaurent L = x.num();
        for (int r = 0; r < 4; ++r)
            for (int k = 0; k < x.ex()[r] - lo[r]; ++k) L = L.mul_linear(r);
        return L;
    };
    std::map<int, std::size_t> row_of;
    auto row = [&](int e) -> std::size_t {
        auto it = row_of.find(e);
        if (it != row_of.end()) return it->second;
        rows.emplace_back(ms.size(), GQ(0));
        rhs.emplace_back(0);
        row_of[e] = rows.size() - 1;
        return rows.size() - 1;
    };
    SLaurent ct = clear(t);
    for (const auto& [e, c] : ct.terms()) rhs[row(e)] = c;
    for (std::size_t j = 0; j < ms.size(); ++j) {
        SLaurent cm = clear(*ms[j]);
        for (const auto& [e, c] : cm.terms()) rows[row(e)][j] = c;
    }
}

}  // namespace

QSeries qjac_evaluate(const std::vector<std::pair<QJacMonomial, GQ>>& poly, int q_max) {
    MonomialEvaluator ev(q_max);
    QSeries r(0, q_max);
    for (const auto& [m, c] : poly) r += ev.eval(m) * c;
    return r;
}

std::string QJacFit::str() const {
    switch (status) {
        case Status::no_representation: return "no representation: " + message;
        case Status::underdetermined: return "underdetermined: " + message;
        case Status::ok: break;
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << m.str();
    }
    if (first) os << "0";
    return os.str();
}

QJacFit qjac_fit(const QSeries& target, int weight_max, int index2, int w_order) {
    QJacFit fit;
    auto monos = qjac_monomials(weight_max, index2);
    fit.unknowns = static_cast<int>(monos.size());
    int q_max = target.q_max();
    if (q_max < 0) {
        fit.status = QJacFit::Status::underdetermined;
        fit.message = "target has no nonnegative q-orders";
        return fit;
    }
    MonomialEvaluator ev(q_max);
    std::vector<QSeries> ms;
    ms.reserve(monos.size());
    for (const auto& m : monos) ms.push_back(ev.eval(m));

    int lo = std::min(0, target.q_min());
    std::vector<GQMatrix> rows(q_max - lo + 1);
    std::vector<std::vector<GQ>> rhs(q_max - lo + 1);
    for (int n = lo; n <= q_max; ++n) {
        std::vector<const SRat*> col;
        for (const auto& s : ms) col.push_back(&s[n]);
        order_equations(target[n], col, rows[n - lo], rhs[n - lo]);
    }

    GQMatrix A;
    std::vector<GQ> b;
    int used = lo - 1;
    LinearSolution sol;
    for (int n = lo; n <= q_max; ++n) {
        A.insert(A.end(), rows[n - lo].begin(), rows[n - lo].end());
        b.insert(b.end(), rhs[n - lo].begin(), rhs[n - lo].end());
        used = n;
        sol = solve_linear(A, b);
        if (sol.status == LinearSolution::Status::inconsistent) {
            fit.status = QJacFit::Status::no_representation;
            fit.fitted_through = n;
            fit.message = "linear system inconsistent at q^" + std::to_string(n);
            return fit;
        }
        if (sol.status == LinearSolution::Status::unique) break;
    }
    fit.fitted_through = used;
    if (sol.status != LinearSolution::Status::unique) {
        fit.status = QJacFit::Status::underdetermined;
        fit.message = "rank " + std::to_string(sol.rank) + " < " + std::to_string(monos.size()) +
                      " unknowns through q^" + std::to_string(q_max);
        return fit;
    }
    if (used == q_max) {
        fit.status = QJacFit::Status::underdetermined;
        fit.message = "no held-out q-orders left for verification";
        return fit;
    }
    for (int n = used + 1; n <= q_max; ++n) {
        const auto& R = rows[n - lo];
        for (std::size_t i = 0; i < R.size(); ++i) {
            GQ acc;
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (!R[i][j].is_zero()) acc.add_product(R[i][j], sol.x[j]);
            if (acc != rhs[n - lo][i]) {
                fit.status = QJacFit::Status::no_representation;
                fit.verified_through = n - 1;
                fit.message = "fit fails on held-out order q^" + std::to_string(n);
                return fit;
            }
        }
    }
    fit.verified_through = q_max;
    QSeries fitted(0, q_max);
    for (std::size_t j = 0; j < monos.size(); ++j)
        if (!sol.x[j].is_zero()) {
            fit.terms.emplace_back(monos[j], sol.x[j]);
            fitted += ms[j] * sol.x[j];
        }
    auto v = substitute_w(fitted, w_order).w_valuation();
    fit.holomorphic = !v || *v >= 0;
    fit.status = QJacFit::Status::ok;
    return fit;
}

}  // namespace k3gw
