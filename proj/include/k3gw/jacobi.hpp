#pragma once

#include "k3gw/qseries.hpp"
#include "k3gw/wseries.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3gw {

// B_n with B_1 = -1/2
Rational bernoulli(int n);

struct GeneratorName {
    enum class Kind { F, K, J1, WP, WP_PRIME, E2k, J2n, J3n, Gn, ETA, DELTA, THETA1, G_FORM, THETA_D4 };
    Kind kind = Kind::F;
    int n = 0;  // k for E2k, n for J2n/J3n/Gn

    // CLI names: F K J1 wp wp_prime E2 E4 E6 ... J2_3 J3_2 G_2 Eta Delta Theta1 G Theta_D4
    std::string str() const;
    static GeneratorName parse(const std::string& text);
    friend bool operator==(const GeneratorName&, const GeneratorName&) = default;
};

// q^{q_shift} * sum_n series[n] q^{n / q_scale}
struct PrefixedSeries {
    Rational q_shift{0};
    int q_scale = 1;
    QSeries series;

    // throws unless the total prefactor is integral and q_scale == 1
    QSeries to_qseries() const;
    PrefixedSeries operator*(const PrefixedSeries& o) const;
    PrefixedSeries operator*(const GQ& c) const;
};

struct QuasiJacobiForm {
    QSeries series;
    int weight2 = 0;  // doubled: eta and theta_1 have weight 1/2
    int index2 = 0;   // doubled
    int pole_order_z0 = 0;
    Rational q_shift{0};
    int q_scale = 1;
    std::optional<GeneratorName> generator;  // set on bare generators

    Rational weight() const { return rat(weight2, 2); }
    Rational index() const { return rat(index2, 2); }
    PrefixedSeries prefixed() const { return {q_shift, q_scale, series}; }

    // measured from the substituted w-expansion; nullopt for the zero series
    std::optional<int> measured_pole_order(int w_order = 8) const;
    bool holomorphic_at_zero(int w_order = 8) const;

    friend QuasiJacobiForm operator*(const QuasiJacobiForm& a, const QuasiJacobiForm& b);
    friend QuasiJacobiForm operator*(const GQ& c, const QuasiJacobiForm& a);
    // sums require equal bigrading and prefactor
    friend QuasiJacobiForm operator+(const QuasiJacobiForm& a, const QuasiJacobiForm& b);
    friend QuasiJacobiForm operator-(const QuasiJacobiForm& a, const QuasiJacobiForm& b);
};

QuasiJacobiForm generator(const GeneratorName& name, int q_max);
QuasiJacobiForm generator(const std::string& name, int q_max);

// eta(m tau)^power products: factors are (m, power)
PrefixedSeries eta_quotient(const std::vector<std::pair<int, int>>& factors, int q_max);
// (eta, Delta)
std::pair<PrefixedSeries, QSeries> eta_and_delta(int q_max);

// D4 theta function, all lattice points with quadratic value <= q_max; carries prefactor q^{1/2}
PrefixedSeries theta_d4(int q_max);
// sum_x q^{<x + alpha/2, x + alpha/2>}
PrefixedSeries d4_lattice_sum(int q_max);

enum class Var { z, tau };

// Right-hand side of the closure relation for a bare F, K, J1, wp or wp_prime.
QSeries closure_relation(GeneratorName::Kind kind, Var var, int q_max);

// Differentiates and, for a bare F/K/J1/wp/wp_prime, checks the closure
// relation to truncation (throws std::logic_error on mismatch).
QuasiJacobiForm diff(const QuasiJacobiForm& form, Var var);

// F as a series in u = 2 pi z through u^{u_order}, from the exponential
// closed form in Eisenstein series.
WSeries f_u_expansion(int q_max, int u_order);

// Generators of the free algebra V, in this order.
enum QJacGen { QJ_F = 0, QJ_E2, QJ_E4, QJ_J1, QJ_WP, QJ_WPP };
inline constexpr std::array<int, 6> kQJacWeights{-1, 2, 4, 1, 2, 3};

struct QJacMonomial {
    std::array<int, 6> e{};
    int weight() const;
    std::string str() const;
    friend bool operator==(const QJacMonomial&, const QJacMonomial&) = default;
};

std::vector<QJacMonomial> qjac_monomials(int weight_max, int index2);
QSeries qjac_evaluate(const std::vector<std::pair<QJacMonomial, GQ>>& poly, int q_max);

struct QJacFit {
    enum class Status { ok, no_representation, underdetermined };
    Status status = Status::no_representation;
    std::vector<std::pair<QJacMonomial, GQ>> terms;  // nonzero coefficients only
    int unknowns = 0;
    int fitted_through = 0;    // q-orders used to determine the coefficients
    int verified_through = 0;  // held-out orders checked afterwards
    bool holomorphic = false;  // no negative w-powers in the fitted form
    std::string message;
    std::string str() const;
};

QJacFit qjac_fit(const QSeries& target, int weight_max, int index2, int w_order = 8);

}  // namespace k3gw
