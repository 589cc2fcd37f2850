#include "k3gw/slaurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k3gw {

namespace {

std::vector<SLaurent::Term> compress(int lo, std::vector<GQ>& dense) {
    std::vector<SLaurent::Term> out;
    for (std::size_t k = 0; k < dense.size(); ++k)
        if (!dense[k].is_zero()) out.emplace_back(lo + static_cast<int>(k), std::move(dense[k]));
    return out;
}

std::vector<GQ> to_dense(const SLaurent& a) {
    std::vector<GQ> d(a.max_exp() - a.min_exp() + 1);
    for (const auto& [e, c] : a.terms()) d[e - a.min_exp()] = c;
    return d;
}

}  // namespace

SLaurent::SLaurent(const GQ& c) {
    if (!c.is_zero()) terms_.emplace_back(0, c);
}

SLaurent SLaurent::monomial(int e, const GQ& c) {
    SLaurent r;
    if (!c.is_zero()) r.terms_.emplace_back(e, c);
    return r;
}

SLaurent SLaurent::y_power(int k, const GQ& c) { return monomial(2 * k, (k % 2 == 0) ? c : -c); }

SLaurent SLaurent::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    SLaurent r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first)
            r.terms_.back().second += t.second;
        else
            r.terms_.push_back(std::move(t));
    }
    r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(), [](const Term& t) { return t.second.is_zero(); }),
                   r.terms_.end());
    return r;
}

GQ SLaurent::coeff(int e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, int v) { return t.first < v; });
    if (it != terms_.end() && it->first == e) return it->second;
    return GQ(0);
}

bool SLaurent::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

SLaurent SLaurent::operator-() const {
    SLaurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

SLaurent& SLaurent::operator+=(const SLaurent& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            GQ c = std::move(a->second);
            c += b->second;
            if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

SLaurent& SLaurent::operator-=(const SLaurent& o) { return *this += -o; }

SLaurent& SLaurent::operator*=(const GQ& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& t : terms_) t.second *= c;
    return *this;
}

SLaurent operator*(const SLaurent& a, const SLaurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    int lo = a.min_exp() + b.min_exp();
    std::vector<GQ> acc(a.max_exp() + b.max_exp() - lo + 1);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) acc[ea + eb - lo].add_product(ca, cb);
    SLaurent r;
    r.terms_ = compress(lo, acc);
    return r;
}

SLaurent SLaurent::shifted(int k) const {
    SLaurent r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
}

SLaurent SLaurent::euler() const {
    SLaurent r;
    for (const auto& [e, c] : terms_)
        if (e != 0) r.terms_.emplace_back(e, c * GQ(e));
    return r;
}

GQ SLaurent::eval_unit_root(int r) const {
    if (r == 0) {
        GQ v;
        for (const auto& t : terms_) v += t.second;
        return v;
    }
    if (r == 2) {
        GQ v;
        for (const auto& [e, c] : terms_) (e % 2 == 0) ? v += c : v -= c;
        return v;
    }
    // s = i or -i: accumulate re/im by rotating
    Rational re = 0, im = 0;
    for (const auto& [e, c] : terms_) {
        int k = ((r == 1 ? e : -e) % 4 + 4) % 4;
        switch (k) {
            case 0: re += c.re(); im += c.im(); break;
            case 1: re -= c.im(); im += c.re(); break;
            case 2: re -= c.re(); im -= c.im(); break;
            default: re += c.im(); im -= c.re(); break;
        }
    }
    return {re, im};
}

GQ SLaurent::eval(const GQ& s) const {
    if (terms_.empty()) return GQ(0);
    GQ sinv = s.inverse();
    GQ v;
    for (const auto& [e, c] : terms_) {
        GQ p(1);
        const GQ& base = e >= 0 ? s : sinv;
        for (int k = 0; k < std::abs(e); ++k) p *= base;
        v.add_product(c, p);
    }
    return v;
}

SLaurent SLaurent::div_linear(int r) const {
    if (is_zero()) return {};
    GQ rho = GQ::ipow(r);
    std::vector<GQ> a = to_dense(*this);
    int n = static_cast<int>(a.size()) - 1;
    if (n == 0) throw std::domain_error("SLaurent::div_linear: not divisible");
    std::vector<GQ> b(n);
    b[n - 1] = a[n];
    for (int k = n - 1; k >= 1; --k) {
        b[k - 1] = a[k];
        b[k - 1].add_product(rho, b[k]);
    }
    GQ rem = a[0];
    rem.add_product(rho, b[0]);
    if (!rem.is_zero()) throw std::domain_error("SLaurent::div_linear: not divisible");
    SLaurent out;
    out.terms_ = compress(min_exp(), b);
    return out;
}

SLaurent SLaurent::mul_linear(int r) const { return shifted(1) - (*this) * GQ::ipow(r); }

SLaurent SLaurent::flip() const {
    SLaurent r = *this;
    for (auto& [e, c] : r.terms_)
        if (e % 2 != 0) c = -c;
    return r;
}

SLaurent SLaurent::conj() const {
    SLaurent r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

std::string SLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (e != 0) os << "*s^" << e;
    }
    return os.str();
}

}  // namespace k3gw
