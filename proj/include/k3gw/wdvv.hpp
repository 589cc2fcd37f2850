#pragma once

#include "k3gw/json_io.hpp"
#include "k3gw/qseries.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3gw {

enum class Pot { H, I, T };

// Coefficients of q^d y^k of the potentials H, I, T.
struct CoeffTable {
    int q_max = 0;
    int k_window = 0;
    std::map<std::pair<int, int>, Rational> H, I, T;

    // last k solved for H and I in row d; T is known one step further
    int k_top(int d) const { return d == 0 ? k_window : k_window - 2 * d; }
    // lowest k that may be nonzero in row d
    static int k_low(Pot p, int d);
    // 0 in the vanishing regions; T_{0,k} is read from its seed; nullopt if not (yet) known
    std::optional<Rational> get(Pot p, int d, int k) const;
    std::map<std::pair<int, int>, Rational>& table(Pot p);
    const std::map<std::pair<int, int>, Rational>& table(Pot p) const;
};

struct MissingCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seeds: T_{0,k} = 8/k^3, T_{d,-2d} = 2/d^3, H_{0,-1} = 1, T_{0,0} = 0.
CoeffTable initial_conditions(int q_max, int k_window);

// Rows d = 0..q_max; row d solved for -2d <= k <= k_window - 2d (row 0 through k_window).
// H_{0,0} is the root of the (1,-1) quadratic with H_{0,0} = I_{0,0}, unless `h00` names another root.
CoeffTable solve(int q_max, int k_window, std::optional<Rational> h00 = std::nullopt);
// values of H_{0,0} for which W1-W6 hold at (1,-2) and (1,-1)
std::vector<Rational> h00_roots(int k_window);

// One bilinear term coef * dz^a dtau^b X * dz^c dtau^e Y of a function-level equation; Y may be ONE.
struct WTerm {
    enum Factor { H, I, T, ONE };
    Rational coef;
    Factor x;
    int a, b;
    Factor y;
    int c, e;
};
const std::vector<WTerm>& wdvv_equation(int which);  // which = 1..6

// Normalized 3x3 step system (rows W1/d, W6/d^2, W5/d^2; columns H_{d,k}, I_{d,k}, T_{d,k+1})
// and the matching right-hand side.
std::pair<std::vector<std::vector<GQ>>, std::vector<GQ>> step_system(const CoeffTable& t, int d, int k);

// q^d y^k coefficient of W_which evaluated on the table; throws MissingCoefficient
Rational coefficient_residual(int which, const CoeffTable& t, int d, int k);

struct WdvvReport {
    bool ok = true;
    long checked = 0;
    std::string first_failure;
    std::optional<int> max_residual_order;  // largest d with a nonzero residual
    std::vector<std::string> notes;
    void fail(const std::string& what, int d);
};

// H, I assembled as series through the largest q-order whose rows are fully inside the window.
int assembled_q_max(const CoeffTable& t);
QSeries assemble(const CoeffTable& t, Pot p, int q_max);

// T-derivative series from the deformed Eisenstein series (index: number of z-derivatives)
QSeries t_derivative(int z_derivs, int q_max);

// Coefficient level: all six equations at every evaluable (d,k).
WdvvReport residual_check(const CoeffTable& t);
// Function level: W1-W6 with T-derivatives traded for deformed Eisenstein series.
WdvvReport function_level_check(const QSeries& H, const QSeries& I);
// T_{d,k} against the four T-relations, coefficientwise in |y| < 1.
WdvvReport trelation_check(const CoeffTable& t);
// I = 4 dtau H - dz^2 H + E2 H and H_{d,k} = H_{d,-k}
WdvvReport ito_h_check(const CoeffTable& t);

Rational closed_form_T(int d, int k);
// every solved coefficient against H = F^2, I = 2G and the T sum formula
WdvvReport verify_closed_forms(const CoeffTable& t);

std::string to_csv(const CoeffTable& t);
Json to_json(const CoeffTable& t);

}  // namespace k3gw
