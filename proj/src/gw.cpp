#include "k3gw/gw.hpp"

#include "k3gw/jacobi.hpp"

#include <sstream>
#include <stdexcept>

namespace k3gw {

namespace {

QSeries gen(const std::string& name, int q) { return generator(name, q).series; }

QSeries inv_delta(int q_max) { return eta_and_delta(q_max + 2).second.inverse().truncated(q_max); }

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::vector<Rational> yau_zaslow(int h_max) {
    if (h_max < 0) throw std::invalid_argument("yau_zaslow: h_max >= 0");
    QSeries x = inv_delta(h_max - 1);
    std::vector<Rational> out;
    for (int h = 0; h <= h_max; ++h) out.push_back(x[h - 1].num().coeff(0).re());
    return out;
}

std::string series_name(Series s) {
    switch (s) {
        case Series::mthm0: return "mthm0";
        case Series::mthm1: return "mthm1";
        case Series::mthm2: return "mthm2";
        case Series::mthm3: return "mthm3";
        case Series::extra_eval: return "extra";
    }
    return "?";
}

Series parse_series(const std::string& name) {
    for (Series s : {Series::mthm0, Series::mthm1, Series::mthm2, Series::mthm3, Series::extra_eval})
        if (series_name(s) == name) return s;
    throw std::invalid_argument("unknown series '" + name + "' (valid: mthm0 mthm1 mthm2 mthm3 extra)");
}

QSeries theorem_closed_form(Series which, int d, int q_max) {
    int lo = which == Series::mthm0 ? 1 : 2;
    if (d < lo || (which == Series::extra_eval && d != 2))
        throw std::invalid_argument(series_name(which) + ": d = " + std::to_string(d) + " out of range");
    // numerators start at q^0; one extra order covers the q^{-1} shift of 1/Delta
    int Q = q_max + 1;
    QSeries F = gen("F", Q);
    QSeries num;
    switch (which) {
        case Series::mthm0: num = F.pow(2 * d - 2); break;
        case Series::mthm1: num = gen("G", Q).pow(d - 1); break;
        case Series::mthm2: num = gen("G", Q).pow(d - 1).dz() * GQ(rat(1, 2 - 2 * d)); break;
        case Series::mthm3:
            num = F.dq().pow(2 * d - 2) * GQ(binom(2 * d - 2, d - 1) / d);
            break;
        case Series::extra_eval: num = F * F.dq(); break;
    }
    return (num * inv_delta(Q)).truncated(q_max);
}

GWTable to_gw_table(const QSeries& x, const std::string& series, int d) {
    GWTable t{series, d, {}};
    for (int n = x.q_min(); n <= x.q_max(); ++n) {
        const SRat& c = x[n];
        if (c.is_zero()) continue;
        if (!c.is_laurent()) throw std::invalid_argument("to_gw_table: q^" + std::to_string(n) + " has poles in y");
        SLaurent lc = c.to_laurent();
        for (auto& [e, v] : lc.terms()) {
            if (e % 2 != 0 || !v.is_real())
                throw std::invalid_argument("to_gw_table: q^" + std::to_string(n) + " is not real in integral y-powers");
            int k = e / 2;
            // s^{2k} = (-y)^k
            t.rows[{n + 1, k}] = k % 2 ? Rational(-v.re()) : v.re();
        }
    }
    return t;
}

GWTable theorem_series(Series which, int d, int q_max) {
    return to_gw_table(theorem_closed_form(which, d, q_max), series_name(which), d);
}

QSeries genus1_closed_form(int q_max) {
    int Q = q_max + 1;
    QSeries F = gen("F", Q), wp = gen("wp", Q), E2 = gen("E2", Q), E4 = gen("E4", Q);
    QSeries num = F * F * (wp * E2 * GQ(54) - E2 * E2 * GQ(Rational(9, 4)) + E4 * GQ(Rational(3, 4)));
    return (num * inv_delta(Q)).truncated(q_max);
}

std::map<std::pair<int, int>, Rational> sine_basis(int g_max) {
    int top = g_max + 1;  // u^{2 top}
    // 2 sin(u/2) = sum (-1)^n u^{2n+1} / (4^n (2n+1)!)
    std::vector<Rational> s(2 * top + 1, Rational(0));
    Rational fact = 1, four = 1;
    for (int n = 0; 2 * n + 1 <= 2 * top; ++n) {
        if (n > 0) fact *= (2 * n) * (2 * n + 1), four *= 4;
        s[2 * n + 1] = (n % 2 ? -1 : 1) / (four * fact);
    }
    auto mul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> c(a.size(), Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            if (sgn(a[i]) != 0)
                for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    std::map<std::pair<int, int>, Rational> out;
    std::vector<Rational> p(2 * top + 1, Rational(0));
    p[0] = 1;
    for (int e = 1; e <= 2 * top; ++e) {
        p = mul(p, s);
        if (e % 2 == 0 && e / 2 - 1 >= 2)
            for (int j = 2; j <= g_max; ++j) out[{e / 2 - 1, j}] = p[2 * j + 2];
    }
    return out;
}

HypTable hyperelliptic_tables(int h_max, int g_max) {
    if (h_max < 0 || g_max < 2) throw std::invalid_argument("hyperelliptic_tables: h_max >= 0, g_max >= 2");
    HypTable t;
    t.h_max = h_max;
    t.g_max = g_max;
    int u_order = 2 * g_max + 2;
    WSeries F = f_u_expansion(h_max, u_order);
    WSeries DF = F.dq();
    WSeries X = (DF * DF).truncated(u_order, h_max).times_q(inv_delta(h_max));
    for (int h = 0; h <= h_max; ++h)
        for (int g = 2; g <= g_max; ++g) t.H[{g, h}] = X.coeff(2 * g + 2, h - 1).re();
    // triangular solve, unit diagonal
    auto S = sine_basis(g_max);
    for (int h = 0; h <= h_max; ++h)
        for (int g = 2; g <= g_max; ++g) {
            Rational v = t.H[{g, h}];
            for (int g2 = 2; g2 < g; ++g2) v -= t.h[{g2, h}] * S[{g2, g}];
            t.h[{g, h}] = v;
        }
    return t;
}

std::map<std::pair<int, int>, Rational> bps_to_virtual(const HypTable& t) {
    auto S = sine_basis(t.g_max);
    std::map<std::pair<int, int>, Rational> out;
    for (int h = 0; h <= t.h_max; ++h)
        for (int g = 2; g <= t.g_max; ++g) {
            Rational v = 0;
            for (int g2 = 2; g2 <= g; ++g2) v += t.h.at({g2, h}) * S[{g2, g}];
            out[{g, h}] = v;
        }
    return out;
}

std::string hyp_table_csv(const HypTable& t) {
    std::ostringstream os;
    os << "h";
    for (int g = 2; g <= t.g_max; ++g) os << ",g=" << g;
    os << "\n";
    for (int h = 2; h <= t.h_max; ++h) {
        os << h;
        for (int g = 2; g <= t.g_max; ++g) os << "," << t.h.at({g, h}).get_str();
        os << "\n";
    }
    return os.str();
}

bool ck_region(int g, int h) { return h >= g + (g / 2) * (g - 1 - g / 2); }

}  // namespace k3gw
