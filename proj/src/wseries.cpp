#include "k3gw/wseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3gw {

namespace {

using PS = std::vector<GQ>;  // dense power series, truncated at size()

PS ps_mul(const PS& a, const PS& b, std::size_t n) {
    PS out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) out[i + j].add_product(a[i], b[j]);
    }
    return out;
}

PS ps_inv(const PS& a, std::size_t n) {
    if (a.empty() || a[0].is_zero()) throw std::domain_error("ps_inv: not a unit");
    PS b(n);
    GQ li = a[0].inverse();
    if (n > 0) b[0] = li;
    for (std::size_t k = 1; k < n; ++k) {
        GQ acc;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc.add_product(a[j], b[k - j]);
        b[k] = -(acc * li);
    }
    return b;
}

PS ps_pow(const PS& a, int k, std::size_t n) {
    PS base = k < 0 ? ps_inv(a, n) : a;
    base.resize(n);
    PS r(n);
    if (n > 0) r[0] = GQ(1);
    for (int e = std::abs(k); e > 0; e >>= 1) {
        if (e & 1) r = ps_mul(r, base, n);
        if (e > 1) base = ps_mul(base, base, n);
    }
    return r;
}

// e^{c w} through w^{n-1}
PS ps_exp_linear(const Rational& c, std::size_t n) {
    PS r(n);
    Rational term = 1;
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = GQ(term);
        term = term * c / Rational(static_cast<long>(k + 1));
    }
    return r;
}

std::vector<GQ> qmul(const std::vector<GQ>& a, int amin, const std::vector<GQ>& b, int bmin, int lo, int hi) {
    std::vector<GQ> out(std::max(0, hi - lo + 1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            int n = amin + static_cast<int>(i) + bmin + static_cast<int>(j);
            if (n > hi) break;
            if (n >= lo && !b[j].is_zero()) out[n - lo].add_product(a[i], b[j]);
        }
    }
    return out;
}

}  // namespace

WSeries::WSeries(int w_min, int w_max, int q_min, int q_max)
    : w_min_(w_min), w_max_(w_max), q_min_(q_min), q_max_(q_max),
      c_(std::max(0, w_max - w_min + 1), std::vector<GQ>(std::max(0, q_max - q_min + 1))) {}

GQ WSeries::coeff(int w, int n) const {
    if (w > w_max_ || n > q_max_) throw std::out_of_range("WSeries: beyond truncation");
    if (w < w_min_ || n < q_min_) return GQ(0);
    return c_[w - w_min_][n - q_min_];
}

GQ& WSeries::at(int w, int n) {
    if (w < w_min_ || w > w_max_ || n < q_min_ || n > q_max_) throw std::out_of_range("WSeries::at");
    return c_[w - w_min_][n - q_min_];
}

QSeries WSeries::q_series(int w) const {
    QSeries r(q_min_, q_max_);
    for (int n = q_min_; n <= q_max_; ++n) r.at(n) = SRat(coeff(w, n));
    return r;
}

std::optional<int> WSeries::w_valuation() const {
    for (int w = w_min_; w <= w_max_; ++w)
        for (const auto& x : c_[w - w_min_])
            if (!x.is_zero()) return w;
    return std::nullopt;
}

WSeries WSeries::operator-() const {
    WSeries r = *this;
    for (auto& row : r.c_)
        for (auto& x : row) x = -x;
    return r;
}

WSeries& WSeries::operator+=(const WSeries& o) {
    WSeries r(std::min(w_min_, o.w_min_), std::min(w_max_, o.w_max_), std::min(q_min_, o.q_min_),
              std::min(q_max_, o.q_max_));
    for (int w = r.w_min_; w <= r.w_max_; ++w)
        for (int n = r.q_min_; n <= r.q_max_; ++n) r.at(w, n) = coeff(w, n) + o.coeff(w, n);
    return *this = std::move(r);
}

WSeries& WSeries::operator*=(const GQ& c) {
    for (auto& row : c_)
        for (auto& x : row) x *= c;
    return *this;
}

WSeries operator*(const WSeries& a, const WSeries& b) {
    int va = a.w_valuation().value_or(a.w_min_);
    int vb = b.w_valuation().value_or(b.w_min_);
    int wlo = va + vb;
    int whi = std::min(a.w_max_ + vb, b.w_max_ + va);
    int qlo = a.q_min_ + b.q_min_;
    int qhi = std::min(a.q_max_ + b.q_min_, b.q_max_ + a.q_min_);
    WSeries r(wlo, whi, qlo, qhi);
    for (int i = va; i <= a.w_max_; ++i)
        for (int j = vb; j <= b.w_max_ && i + j <= whi; ++j) {
            auto prod = qmul(a.c_[i - a.w_min_], a.q_min_, b.c_[j - b.w_min_], b.q_min_, qlo, qhi);
            auto& row = r.c_[i + j - wlo];
            for (std::size_t k = 0; k < prod.size(); ++k) row[k] += prod[k];
        }
    return r;
}

bool operator==(const WSeries& a, const WSeries& b) {
    int wlo = std::min(a.w_min_, b.w_min_), whi = std::min(a.w_max_, b.w_max_);
    int qlo = std::min(a.q_min_, b.q_min_), qhi = std::min(a.q_max_, b.q_max_);
    for (int w = wlo; w <= whi; ++w)
        for (int n = qlo; n <= qhi; ++n)
            if (a.coeff(w, n) != b.coeff(w, n)) return false;
    return true;
}

WSeries WSeries::truncated(int w_max, int q_max) const {
    WSeries r(w_min_, std::min(w_max, w_max_), q_min_, std::min(q_max, q_max_));
    for (int w = r.w_min_; w <= r.w_max_; ++w)
        for (int n = r.q_min_; n <= r.q_max_; ++n) r.at(w, n) = coeff(w, n);
    return r;
}

WSeries WSeries::dw() const {
    WSeries r(w_min_ - 1, w_max_ - 1, q_min_, q_max_);
    for (int w = w_min_; w <= w_max_; ++w)
        for (int n = q_min_; n <= q_max_; ++n) r.at(w - 1, n) = coeff(w, n) * GQ(w);
    return r;
}

WSeries WSeries::dq() const {
    WSeries r = *this;
    for (auto& row : r.c_)
        for (std::size_t k = 0; k < row.size(); ++k) row[k] *= GQ(q_min_ + static_cast<int>(k));
    return r;
}

WSeries WSeries::exp() const {
    auto v = w_valuation();
    if (v && *v < 1) throw std::domain_error("WSeries::exp: needs positive w-valuation");
    if (q_min_ < 0) throw std::domain_error("WSeries::exp: needs nonnegative q exponents");
    WSeries e(0, w_max_, 0, q_max_);
    e.at(0, 0) = GQ(1);
    for (int n = 1; n <= w_max_; ++n) {
        std::vector<GQ> acc(q_max_ + 1);
        for (int k = 1; k <= n; ++k) {
            if (k < w_min_) continue;
            auto prod = qmul(c_[k - w_min_], q_min_, e.c_[n - k], 0, 0, q_max_);
            for (int t = 0; t <= q_max_; ++t) acc[t].add_product(prod[t], GQ(k));
        }
        for (int t = 0; t <= q_max_; ++t) e.at(n, t) = acc[t] / GQ(n);
    }
    return e;
}

WSeries WSeries::rescale(const GQ& c) const {
    WSeries r = *this;
    GQ cinv = c.inverse();
    for (int w = w_min_; w <= w_max_; ++w) {
        GQ f(1);
        for (int k = 0; k < std::abs(w); ++k) f *= (w >= 0 ? c : cinv);
        for (auto& x : r.c_[w - w_min_]) x *= f;
    }
    return r;
}

WSeries WSeries::times_q(const QSeries& f) const {
    int qlo = q_min_ + f.q_min();
    int qhi = std::min(q_max_ + f.q_min(), f.q_max() + q_min_);
    std::vector<GQ> fv;
    for (int n = f.q_min(); n <= f.q_max(); ++n) {
        const SRat& x = f[n];
        if (!x.is_zero() && !(x.num().is_constant() && x.ex() == SRat::Exps{0, 0, 0, 0}))
            throw std::invalid_argument("WSeries::times_q: coefficients must be constants");
        fv.push_back(x.is_zero() ? GQ(0) : x.num().coeff(0));
    }
    WSeries r(w_min_, w_max_, qlo, qhi);
    for (int w = w_min_; w <= w_max_; ++w) r.c_[w - w_min_] = qmul(c_[w - w_min_], q_min_, fv, f.q_min(), qlo, qhi);
    return r;
}

bool WSeries::is_real() const {
    for (const auto& row : c_)
        for (const auto& x : row)
            if (!x.is_real()) return false;
    return true;
}

std::pair<int, std::vector<GQ>> substitute_w(const SRat& x, int w_order) {
    if (x.is_zero()) return {w_order + 1, {}};
    int val = x.ex()[0];
    int len = w_order - val + 1;  // number of unit-series terms needed
    if (len <= 0) return {val, {}};
    std::size_t n = static_cast<std::size_t>(len);
    // numerator sum c_a e^{a w / 2}
    PS unit(n);
    for (const auto& [a, c] : x.num().terms()) {
        PS e = ps_exp_linear(rat(a, 2), n);
        for (std::size_t k = 0; k < n; ++k) unit[k].add_product(c, e[k]);
    }
    // (s - 1)^{e0} = (w/2)^{e0} U^{e0}, U = sum (w/2)^k/(k+1)!
    if (x.ex()[0] != 0) {
        PS U(n);
        Rational t = 1;
        for (std::size_t k = 0; k < n; ++k) {
            t = (k == 0) ? Rational(1) : t / Rational(2) / Rational(static_cast<long>(k + 1));
            U[k] = GQ(t);
        }
        // U[k] = 1/(2^k (k+1)!)
        unit = ps_mul(unit, ps_pow(U, x.ex()[0], n), n);
        Rational half = 1;
        for (int k = 0; k < std::abs(x.ex()[0]); ++k) half *= Rational(1, 2);
        GQ f = x.ex()[0] > 0 ? GQ(half) : GQ(Rational(1) / half);
        for (auto& c : unit) c *= f;
    }
    for (int r = 1; r < 4; ++r) {
        if (x.ex()[r] == 0) continue;
        PS f = ps_exp_linear(Rational(1, 2), n);
        f[0] -= GQ::ipow(r);
        unit = ps_mul(unit, ps_pow(f, x.ex()[r], n), n);
    }
    return {val, unit};
}

WSeries substitute_w(const QSeries& a, int w_order) {
    int wlo = 0;
    for (const auto& x : a.coeffs())
        if (!x.is_zero()) wlo = std::min(wlo, x.ex()[0]);
    WSeries r(wlo, w_order, a.q_min(), a.q_max());
    for (int n = a.q_min(); n <= a.q_max(); ++n) {
        auto [val, cs] = substitute_w(a[n], w_order);
        for (std::size_t k = 0; k < cs.size(); ++k) r.at(val + static_cast<int>(k), n) = cs[k];
    }
    return r;
}

}  // namespace k3gw
