#pragma once

#include "k3gw/qseries.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace k3gw {

// N_0..N_{h_max}: coefficients of 1/Delta = sum N_h q^{h-1}
std::vector<Rational> yau_zaslow(int h_max);

enum class Series {
    mthm0,       // F^{2d-2} / Delta
    mthm1,       // G^{d-1} / Delta
    mthm2,       // 1/(2-2d) (y d/dy G^{d-1}) / Delta
    mthm3,       // 1/d binom(2d-2, d-1) (q d/dq F)^{2d-2} / Delta
    extra_eval,  // F (q d/dq F) / Delta, d = 2 only
};
std::string series_name(Series s);
// "mthm0" ... "extra"; throws std::invalid_argument listing the valid names
Series parse_series(const std::string& name);

// Closed form through q^{q_max}; throws std::invalid_argument when d is out of range.
QSeries theorem_closed_form(Series which, int d, int q_max);

// (h, k) -> coefficient of y^k q^{h-1}
struct GWTable {
    std::string series;
    int d = 0;
    std::map<std::pair<int, int>, Rational> rows;
};

// Reads a series whose q-coefficients are real Laurent polynomials in y.
GWTable to_gw_table(const QSeries& x, const std::string& series, int d);
GWTable theorem_series(Series which, int d, int q_max);

// F^2 (54 wp E2 - 9/4 E2^2 + 3/4 E4) / Delta
QSeries genus1_closed_form(int q_max);

// (g, h) keyed
struct HypTable {
    int h_max = 0, g_max = 0;
    std::map<std::pair<int, int>, Rational> H;  // virtual counts: u^{2g+2} q^{h-1} of (q d/dq F)^2 / Delta
    std::map<std::pair<int, int>, Rational> h;  // BPS counts
};

HypTable hyperelliptic_tables(int h_max, int g_max);
// coefficients of (2 sin(u/2))^{2g+2} in u^{2j+2}, j = 2..g_max: row g, column j
std::map<std::pair<int, int>, Rational> sine_basis(int g_max);
// the forward change: sum_g h_{g,h} (2 sin(u/2))^{2g+2} read off in u^{2g+2}
std::map<std::pair<int, int>, Rational> bps_to_virtual(const HypTable& t);
// rows h = 2..h_max, columns g = 2..g_max
std::string hyp_table_csv(const HypTable& t);
// h >= g + floor(g/2) (g - 1 - floor(g/2))
bool ck_region(int g, int h);

}  // namespace k3gw
