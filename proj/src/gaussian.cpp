#include "k3gw/gaussian.hpp"

#include <ostream>
#include <stdexcept>

namespace k3gw {

Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str() + "/1";
    return r.get_str();
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    if (is_real()) return {Rational(1) / re_};
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
    if (a.is_real() && b.is_real()) {
        re_ += a.re_ * b.re_;
        return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

GaussianRational GaussianRational::ipow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1};
        case 1: return {Rational(0), Rational(1)};
        case 2: return {-1};
        default: return {Rational(0), Rational(-1)};
    }
}

std::string GaussianRational::str() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "*i";
    std::string s = re_.get_str();
    s += sgn(im_) > 0 ? "+" : "";
    return s + im_.get_str() + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

}  // namespace k3gw
