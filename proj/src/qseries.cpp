#include "k3gw/qseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k3gw {

namespace {
const SRat kZero;
}

QSeries::QSeries(int q_min, int q_max) : q_min_(q_min), c_(std::max(0, q_max - q_min + 1)) {}

QSeries::QSeries(int q_min, std::vector<SRat> coeffs) : q_min_(q_min), c_(std::move(coeffs)) {}

QSeries QSeries::constant(const SRat& c, int q_max) {
    QSeries r(0, q_max);
    if (q_max >= 0) r.c_[0] = c;
    return r;
}

QSeries QSeries::monomial(int n, const SRat& c, int q_max) {
    QSeries r(n, q_max);
    if (q_max >= n) r.c_[0] = c;
    return r;
}

QSeries QSeries::from_ints(int q_min, const std::vector<long>& c) {
    std::vector<SRat> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(GQ(x));
    return QSeries(q_min, std::move(v));
}

const SRat& QSeries::operator[](int n) const {
    if (n < q_min_) return kZero;
    if (n > q_max()) throw std::out_of_range("QSeries: coefficient beyond truncation order");
    return c_[n - q_min_];
}

SRat& QSeries::at(int n) {
    if (n < q_min_ || n > q_max()) throw std::out_of_range("QSeries::at");
    return c_[n - q_min_];
}

std::optional<int> QSeries::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return q_min_ + static_cast<int>(k);
    return std::nullopt;
}

bool QSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const SRat& x) { return x.is_zero(); });
}

bool QSeries::is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const SRat& x) { return x.is_real(); });
}

QSeries QSeries::truncated(int qm) const {
    if (qm >= q_max()) return *this;
    QSeries r = *this;
    r.c_.resize(std::max(0, qm - q_min_ + 1));
    return r;
}

QSeries QSeries::trimmed() const {
    auto v = valuation();
    if (!v || *v == q_min_) return *this;
    return QSeries(*v, std::vector<SRat>(c_.begin() + (*v - q_min_), c_.end()));
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    int lo = std::min(q_min_, o.q_min_);
    int hi = std::min(q_max(), o.q_max());
    std::vector<SRat> out(std::max(0, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        SRat v = (*this)[n];
        v += o[n];
        out[n - lo] = std::move(v);
    }
    q_min_ = lo;
    c_ = std::move(out);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const GQ& c) {
    for (auto& x : c_) x *= c;
    return *this;
}

QSeries& QSeries::operator*=(const SRat& c) {
    for (auto& x : c_) x *= c;
    return *this;
}

QSeries operator*(const QSeries& a0, const QSeries& b0) {
    // leading zeros are exact, so trimming them only improves precision
    std::optional<QSeries> ta, tb;
    auto va = a0.valuation(), vb = b0.valuation();
    if (va && *va > a0.q_min()) ta = a0.trimmed();
    if (vb && *vb > b0.q_min()) tb = b0.trimmed();
    const QSeries& a = ta ? *ta : a0;
    const QSeries& b = tb ? *tb : b0;
    int lo = a.q_min_ + b.q_min_;
    int hi = std::min(a.q_max() + b.q_min_, b.q_max() + a.q_min_);
    std::vector<SRat> out(std::max(0, hi - lo + 1));
    std::vector<SRat> parts;
    for (int n = lo; n <= hi; ++n) {
        parts.clear();
        for (int i = a.q_min_; i <= a.q_max(); ++i) {
            int j = n - i;
            if (j < b.q_min_) break;
            if (j > b.q_max()) continue;
            const SRat& x = a.c_[i - a.q_min_];
            const SRat& y = b.c_[j - b.q_min_];
            if (x.is_zero() || y.is_zero()) continue;
            parts.push_back(x * y);
        }
        out[n - lo] = parts.size() == 1 ? std::move(parts[0]) : SRat::sum(parts);
    }
    return QSeries(lo, std::move(out));
}

QSeries QSeries::shifted(int k) const { return QSeries(q_min_ + k, c_); }

QSeries QSeries::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    if (n == 0) {
        // x^0 = 1 to the relative precision of x
        int v = valuation().value_or(q_min_);
        return constant(SRat(1), q_max() - v);
    }
    std::optional<QSeries> result;
    QSeries base = *this;
    while (n > 0) {
        if (n & 1) result = result ? *result * base : base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return *result;
}

QSeries QSeries::inverse() const {
    auto v = valuation();
    if (!v) throw std::domain_error("QSeries::inverse: zero series");
    const SRat& lead = (*this)[*v];
    if (!lead.is_unit()) throw std::domain_error("QSeries::inverse: leading coefficient is not a monomial unit");
    SRat li = lead.inverse();
    int prec = q_max() - *v;  // relative precision
    std::vector<SRat> b(prec + 1);
    b[0] = li;
    std::vector<SRat> parts;
    for (int n = 1; n <= prec; ++n) {
        parts.clear();
        for (int k = 1; k <= n; ++k) {
            const SRat& ak = (*this)[*v + k];
            if (ak.is_zero() || b[n - k].is_zero()) continue;
            parts.push_back(ak * b[n - k]);
        }
        b[n] = -(SRat::sum(parts) * li);
    }
    return QSeries(-*v, std::move(b));
}

QSeries QSeries::dz() const {
    QSeries r = *this;
    for (auto& x : r.c_) x = x.dz();
    return r;
}

QSeries QSeries::dq() const {
    QSeries r = *this;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] *= GQ(q_min_ + static_cast<int>(k));
    return r;
}

QSeries QSeries::scale_q(int m) const {
    if (m <= 0) throw std::invalid_argument("QSeries::scale_q: m must be positive");
    int lo = q_min_ * m;
    int hi = q_max() * m + (m - 1);
    QSeries r(lo, hi);
    for (int n = q_min_; n <= q_max(); ++n) r.c_[n * m - lo] = c_[n - q_min_];
    return r;
}

QSeries QSeries::map(const std::function<SRat(const SRat&)>& f) const {
    QSeries r = *this;
    for (auto& x : r.c_) x = f(x);
    return r;
}

QSeries QSeries::eval_s(const GQ& s) const {
    return map([&](const SRat& x) { return SRat(x.eval(s)); });
}

std::string QSeries::str() const {
    std::ostringstream os;
    for (int n = q_min_; n <= q_max(); ++n) {
        const SRat& x = c_[n - q_min_];
        if (x.is_zero()) continue;
        os << "q^" << n << ": " << x.str() << "\n";
    }
    os << "O(q^" << q_max() + 1 << ")";
    return os.str();
}

QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }
QSeries invert(const QSeries& a) { return a.inverse(); }
QSeries dz(const QSeries& a) { return a.dz(); }
QSeries dq(const QSeries& a) { return a.dq(); }

SeriesComparison compare(const QSeries& a, const QSeries& b) {
    SeriesComparison r;
    int lo = std::min(a.q_min(), b.q_min());
    int hi = std::min(a.q_max(), b.q_max());
    if (hi < lo) throw std::invalid_argument("compare: no common reliable range");
    r.verified_through = hi;
    for (int n = lo; n <= hi; ++n) {
        if (a[n] != b[n]) {
            r.first_mismatch = n;
            return r;
        }
    }
    r.equal = true;
    return r;
}

}  // namespace k3gw
