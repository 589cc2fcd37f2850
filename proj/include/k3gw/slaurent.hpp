#pragma once

#include "k3gw/gaussian.hpp"

#include <string>
#include <utility>
#include <vector>

namespace k3gw {

// Finite Laurent polynomial in s = (-y)^{1/2}, sparse, sorted by exponent,
// never storing a zero coefficient.
class SLaurent {
public:
    using Term = std::pair<int, GQ>;

    SLaurent() = default;
    SLaurent(const GQ& c);  // constant
    SLaurent(int c) : SLaurent(GQ(c)) {}
    static SLaurent monomial(int e, const GQ& c = GQ(1));
    // Builds from unsorted terms; merges duplicates and drops zeros.
    static SLaurent from_terms(std::vector<Term> terms);
    // y^k = (-1)^k s^{2k}
    static SLaurent y_power(int k, const GQ& c = GQ(1));

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int min_exp() const { return terms_.front().first; }
    int max_exp() const { return terms_.back().first; }
    GQ coeff(int e) const;
    bool is_real() const;
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

    SLaurent operator-() const;
    SLaurent& operator+=(const SLaurent& o);
    SLaurent& operator-=(const SLaurent& o);
    SLaurent& operator*=(const GQ& c);
    friend SLaurent operator+(SLaurent a, const SLaurent& b) { return a += b; }
    friend SLaurent operator-(SLaurent a, const SLaurent& b) { return a -= b; }
    friend SLaurent operator*(const SLaurent& a, const SLaurent& b);
    friend SLaurent operator*(SLaurent a, const GQ& c) { return a *= c; }
    friend SLaurent operator*(const GQ& c, SLaurent a) { return a *= c; }
    friend bool operator==(const SLaurent& a, const SLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SLaurent& a, const SLaurent& b) { return !(a == b); }

    SLaurent shifted(int k) const;
    // multiplies s^e by e (the Euler operator s d/ds)
    SLaurent euler() const;
    // value at s = i^r for r in {0,1,2,3}
    GQ eval_unit_root(int r) const;
    GQ eval(const GQ& s) const;
    // exact quotient by (s - i^r); requires divisibility
    SLaurent div_linear(int r) const;
    SLaurent mul_linear(int r) const;
    // substitute s -> -s
    SLaurent flip() const;
    SLaurent conj() const;

    std::string str() const;

private:
    std::vector<Term> terms_;
};

}  // namespace k3gw
