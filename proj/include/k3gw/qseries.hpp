#pragma once

#include "k3gw/srat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace k3gw {

// Truncated series sum_{n = q_min}^{q_max} c_n q^n. Coefficients below q_min
// are zero; those above q_max are unknown.
class QSeries {
public:
    QSeries() = default;
    QSeries(int q_min, int q_max);  // zero, known through q_max
    QSeries(int q_min, std::vector<SRat> coeffs);
    static QSeries constant(const SRat& c, int q_max);
    static QSeries monomial(int n, const SRat& c, int q_max);
    // integer coefficient sequence c[0..] starting at q^{q_min}
    static QSeries from_ints(int q_min, const std::vector<long>& c);

    int q_min() const { return q_min_; }
    int q_max() const { return q_min_ + static_cast<int>(c_.size()) - 1; }
    const std::vector<SRat>& coeffs() const { return c_; }
    // zero below q_min; throws above q_max
    const SRat& operator[](int n) const;
    SRat& at(int n);
    // lowest n with nonzero coefficient, or nullopt
    std::optional<int> valuation() const;
    bool is_zero() const;
    bool is_real() const;

    QSeries truncated(int q_max) const;
    // drops leading zero coefficients (raises q_min up to the valuation)
    QSeries trimmed() const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const GQ& c);
    QSeries& operator*=(const SRat& c);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(QSeries a, const GQ& c) { return a *= c; }
    friend QSeries operator*(const GQ& c, QSeries a) { return a *= c; }
    friend QSeries operator*(QSeries a, const SRat& c) { return a *= c; }

    QSeries shifted(int k) const;  // multiply by q^k
    QSeries pow(int n) const;
    QSeries inverse() const;
    QSeries dz() const;
    QSeries dq() const;
    // q -> q^m
    QSeries scale_q(int m) const;
    QSeries map(const std::function<SRat(const SRat&)>& f) const;
    // substitutes a value for s, giving a series with constant coefficients
    QSeries eval_s(const GQ& s) const;

    std::string str() const;

private:
    int q_min_ = 0;
    std::vector<SRat> c_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries invert(const QSeries& a);
QSeries dz(const QSeries& a);
QSeries dq(const QSeries& a);

struct SeriesComparison {
    bool equal = false;
    int verified_through = 0;  // common reliable order
    std::optional<int> first_mismatch;
};

// Compares on the common range; a nonempty common range is required.
SeriesComparison compare(const QSeries& a, const QSeries& b);

}  // namespace k3gw
