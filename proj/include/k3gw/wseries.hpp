#pragma once

#include "k3gw/qseries.hpp"

#include <vector>

namespace k3gw {

// Truncated double series sum c[w][n] x^w q^n in a z-local variable x
// (w = 2 pi i z for substitute_w, u = 2 pi z for f_u_expansion) with
// scalar q-series coefficients.
class WSeries {
public:
    WSeries() = default;
    WSeries(int w_min, int w_max, int q_min, int q_max);

    int w_min() const { return w_min_; }
    int w_max() const { return w_max_; }
    int q_min() const { return q_min_; }
    int q_max() const { return q_max_; }
    // zero outside [w_min, *] x [q_min, *]; throws beyond truncation
    GQ coeff(int w, int n) const;
    GQ& at(int w, int n);
    // coefficient of x^w as a scalar q-series
    QSeries q_series(int w) const;
    // lowest w with a nonzero coefficient, or nullopt
    std::optional<int> w_valuation() const;

    WSeries operator-() const;
    WSeries& operator+=(const WSeries& o);
    WSeries& operator*=(const GQ& c);
    friend WSeries operator+(WSeries a, const WSeries& b) { return a += b; }
    friend WSeries operator-(WSeries a, const WSeries& b) { return a += -b; }
    friend WSeries operator*(const WSeries& a, const WSeries& b);
    friend WSeries operator*(WSeries a, const GQ& c) { return a *= c; }
    friend bool operator==(const WSeries& a, const WSeries& b);

    WSeries truncated(int w_max, int q_max) const;
    WSeries dw() const;
    WSeries dq() const;
    // exp of a series with w-valuation >= 1
    WSeries exp() const;
    // multiply the x^w coefficient by c^w (change of variable x -> c x)
    WSeries rescale(const GQ& c) const;
    // multiply by a scalar q-series
    WSeries times_q(const QSeries& f) const;
    bool is_real() const;

private:
    int w_min_ = 0, w_max_ = -1, q_min_ = 0, q_max_ = -1;
    std::vector<std::vector<GQ>> c_;
};

// Substitutes s = e^{w/2} (so y = -e^w) into every q-coefficient, keeping
// w-powers through w_order.
WSeries substitute_w(const QSeries& a, int w_order);
// The same for one coefficient, returned as dense w-coefficients from
// w^{valuation} to w^{w_order}; first element of the pair is the valuation.
std::pair<int, std::vector<GQ>> substitute_w(const SRat& x, int w_order);

}  // namespace k3gw
