#pragma once

#include "k3gw/slaurent.hpp"

#include <array>
#include <string>

namespace k3gw {

// num(s) * prod_r (s - i^r)^{ex[r]}, r = 0..3 (points s = 1, i, -1, -i).
// Canonical: num does not vanish at any of the four points; zero has ex = 0.
// This holds the q-coefficients of J1, wp, wp' and friends, whose y-parts
// are rational with poles at y = -1 (s = +-1) or y = 1 (s = +-i).
class SRat {
public:
    using Exps = std::array<int, 4>;

    SRat() : ex_{0, 0, 0, 0} {}
    SRat(const SLaurent& num) : num_(num), ex_{0, 0, 0, 0} { normalize(); }
    SRat(const GQ& c) : SRat(SLaurent(c)) {}
    SRat(int c) : SRat(GQ(c)) {}
    SRat(SLaurent num, const Exps& ex) : num_(std::move(num)), ex_(ex) { normalize(); }

    // (s - i^r)^k
    static SRat linear_power(int r, int k);

    const SLaurent& num() const { return num_; }
    const Exps& ex() const { return ex_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return ex_[0] >= 0 && ex_[1] >= 0 && ex_[2] >= 0 && ex_[3] >= 0; }
    bool is_real() const;
    // pole order at s = 1 (z = 0)
    int pole_order_z0() const { return ex_[0] < 0 ? -ex_[0] : 0; }

    // expanded Laurent polynomial; requires is_laurent()
    SLaurent to_laurent() const;
    // Laurent expansion around s = 0 (|y| < 1), terms of s-degree <= max_deg
    SLaurent expand_at_zero(int max_deg) const;
    GQ eval(const GQ& s) const;

    SRat operator-() const { return SRat(-num_, ex_, Raw{}); }
    SRat& operator+=(const SRat& o);
    SRat& operator-=(const SRat& o) { return *this += -o; }
    SRat& operator*=(const SRat& o);
    SRat& operator*=(const GQ& c);
    friend SRat operator+(SRat a, const SRat& b) { return a += b; }
    friend SRat operator-(SRat a, const SRat& b) { return a -= b; }
    friend SRat operator*(SRat a, const SRat& b) { return a *= b; }
    friend SRat operator*(SRat a, const GQ& c) { return a *= c; }
    friend SRat operator*(const GQ& c, SRat a) { return a *= c; }
    friend bool operator==(const SRat& a, const SRat& b) { return a.ex_ == b.ex_ && a.num_ == b.num_; }
    friend bool operator!=(const SRat& a, const SRat& b) { return !(a == b); }

    // multiplicative inverse; requires num to be a monomial
    bool is_unit() const { return num_.size() == 1; }
    SRat inverse() const;
    // y d/dy = (1/2) s d/ds
    SRat dz() const;
    // s -> -s
    SRat flip() const;
    SRat conj() const;
    SRat shifted(int k) const { return SRat(num_.shifted(k), ex_, Raw{}); }

    // sum of many terms over one common denominator, normalized once
    static SRat sum(const std::vector<SRat>& xs);

    std::string str() const;

private:
    struct Raw {};
    SRat(SLaurent num, const Exps& ex, Raw) : num_(std::move(num)), ex_(ex) {}
    void normalize();

    SLaurent num_;
    Exps ex_;
};

}  // namespace k3gw
