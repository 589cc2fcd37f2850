#include "k3gw/phi.hpp"

#include <array>
#include <string>

namespace k3gw {

MissingPhi::MissingPhi(int m_, int l_)
    : std::out_of_range("phi_{" + std::to_string(m_) + "," + std::to_string(l_) +
                        "} is outside the derivable closure of the closed-form table"),
      m(m_),
      l(l_) {}

namespace {

using Kind = GeneratorName::Kind;

// c * J1^a wp^b wp'^c E2^d E4^e
struct Term {
    Rational c;
    std::array<int, 5> e;
};

// phi_{m,l} + sgn(m) delta_{ml} = factor * K^kpow * sum(terms)
struct Closed {
    int m, l, kpow;
    Rational factor;
    std::vector<Term> terms;
};

Term t(long p, long q, int a, int b, int c, int d, int e) { return {rat(p, q), {a, b, c, d, e}}; }

const std::vector<Closed>& closed_forms() {
    static const std::vector<Closed> table = {
        {1, -1, 2, 1, {t(1, 2, 2, 0, 0, 0, 0), t(-1, 2, 0, 1, 0, 0, 0), t(-1, 12, 0, 0, 0, 1, 0)}},
        {1, 0, 1, -1, {t(1, 1, 0, 0, 0, 0, 0)}},
        {1, 1, 2, 1, {t(1, 1, 0, 1, 0, 0, 0), t(-1, 12, 0, 0, 0, 1, 0)}},
        {2, -2, 4, 2,
         {t(1, 1, 4, 0, 0, 0, 0), t(-2, 1, 2, 1, 0, 0, 0), t(-1, 12, 2, 0, 0, 1, 0), t(-1, 2, 1, 0, 1, 0, 0)}},
        {2, -1, 3, 2,
         {t(2, 3, 3, 0, 0, 0, 0), t(-1, 1, 1, 1, 0, 0, 0), t(-1, 12, 1, 0, 0, 1, 0), t(-1, 6, 0, 0, 1, 0, 0)}},
        {2, 0, 2, -2, {t(1, 1, 1, 0, 0, 0, 0)}},
        {2, 1, 3, 2, {t(1, 1, 1, 1, 0, 0, 0), t(-1, 12, 1, 0, 0, 1, 0), t(1, 2, 0, 0, 1, 0, 0)}},
        {2, 2, 4, 2,
         {t(1, 1, 2, 1, 0, 0, 0), t(-1, 12, 2, 0, 0, 1, 0), t(3, 2, 0, 2, 0, 0, 0), t(1, 1, 1, 0, 1, 0, 0),
          t(-1, 96, 0, 0, 0, 0, 1)}},
        {3, -2, 5, 3,
         {t(9, 5, 5, 0, 0, 0, 0), t(-9, 2, 3, 1, 0, 0, 0), t(-1, 8, 3, 0, 0, 1, 0), t(1, 2, 1, 2, 0, 0, 0),
          t(1, 24, 1, 1, 0, 1, 0), t(-5, 4, 2, 0, 1, 0, 0), t(1, 180, 1, 0, 0, 0, 1), t(3, 20, 0, 1, 1, 0, 0)}},
        {3, -1, 4, 3,
         {t(9, 8, 4, 0, 0, 0, 0), t(-9, 4, 2, 1, 0, 0, 0), t(-1, 8, 2, 0, 0, 1, 0), t(1, 8, 0, 2, 0, 0, 0),
          t(1, 24, 0, 1, 0, 1, 0), t(-1, 2, 1, 0, 1, 0, 0), t(1, 288, 0, 0, 0, 0, 1)}},
        {3, 0, 3, 1, {t(-9, 2, 2, 0, 0, 0, 0), t(3, 2, 0, 1, 0, 0, 0)}},
        {3, 1, 4, 3,
         {t(3, 2, 2, 1, 0, 0, 0), t(-1, 8, 2, 0, 0, 1, 0), t(1, 2, 0, 2, 0, 0, 0), t(1, 24, 0, 1, 0, 1, 0),
          t(1, 1, 1, 0, 1, 0, 0), t(-1, 144, 0, 0, 0, 0, 1)}},
        {3, 2, 5, 3,
         {t(3, 2, 3, 1, 0, 0, 0), t(-1, 8, 3, 0, 0, 1, 0), t(7, 2, 1, 2, 0, 0, 0), t(1, 24, 1, 1, 0, 1, 0),
          t(7, 4, 2, 0, 1, 0, 0), t(-1, 36, 1, 0, 0, 0, 1), t(3, 4, 0, 1, 1, 0, 0)}},
        {3, 3, 6, 3,
         {t(9, 4, 4, 1, 0, 0, 0), t(-3, 16, 4, 0, 0, 1, 0), t(15, 2, 2, 2, 0, 0, 0), t(1, 8, 2, 1, 0, 1, 0),
          t(3, 1, 3, 0, 1, 0, 0), t(5, 4, 0, 3, 0, 0, 0), t(-1, 48, 0, 2, 0, 1, 0), t(-1, 16, 2, 0, 0, 0, 1),
          t(3, 1, 1, 1, 1, 0, 0), t(-1, 144, 0, 1, 0, 0, 1), t(1, 3, 0, 0, 2, 0, 0)}},
        {4, 0, 4, 1, {t(-32, 3, 3, 0, 0, 0, 0), t(8, 1, 1, 1, 0, 0, 0), t(2, 3, 0, 0, 1, 0, 0)}},
    };
    return table;
}

class Powers {
public:
    explicit Powers(int q_max) {
        const GeneratorName names[6] = {{Kind::J1, 0},  {Kind::WP, 0},  {Kind::WP_PRIME, 0},
                                        {Kind::E2k, 1}, {Kind::E2k, 2}, {Kind::K, 0}};
        for (int g = 0; g < 6; ++g) pows_[g].push_back(generator(names[g], q_max));
    }
    // g^k for k >= 1
    const QuasiJacobiForm& power(int g, int k) {
        while (static_cast<int>(pows_[g].size()) < k) pows_[g].push_back(pows_[g].back() * pows_[g][0]);
        return pows_[g][k - 1];
    }

private:
    std::array<std::vector<QuasiJacobiForm>, 6> pows_;
};

QuasiJacobiForm build(const Closed& c, Powers& P) {
    std::optional<QuasiJacobiForm> sum;
    for (const auto& term : c.terms) {
        std::optional<QuasiJacobiForm> mono;
        for (int g = 0; g < 5; ++g) {
            if (term.e[g] == 0) continue;
            mono = mono ? *mono * P.power(g, term.e[g]) : P.power(g, term.e[g]);
        }
        QuasiJacobiForm x = GQ(term.c) * (mono ? *mono * P.power(5, c.kpow) : P.power(5, c.kpow));
        sum = sum ? *sum + x : x;
    }
    return GQ(c.factor) * *sum;
}

bool has_closed_form(int m, int l) {
    for (const auto& c : closed_forms())
        if (c.m == m && c.l == l) return true;
    return false;
}

bool available(int m, int l) { return has_closed_form(m, l) || has_closed_form(-m, -l); }

int sgn_int(int x) { return (x > 0) - (x < 0); }

}  // namespace

const std::vector<std::pair<int, int>>& PhiTable::closed_form_entries() {
    static const std::vector<std::pair<int, int>> v = [] {
        std::vector<std::pair<int, int>> out;
        for (const auto& c : closed_forms()) out.emplace_back(c.m, c.l);
        return out;
    }();
    return v;
}

bool PhiTable::derivable(int m, int l) {
    if (m == 0 && l == 0) return false;
    if (m == 0) return true;  // l phi_{l,0} = 0 * ... forces phi_{0,l} = 0
    return available(m, l) || (l != 0 && available(l, m));
}

PhiTable::PhiTable(int q_max) : q_max_(q_max) {
    Powers P(q_max);
    std::map<std::pair<int, int>, QuasiJacobiForm> base;
    for (const auto& c : closed_forms()) base.emplace(std::make_pair(c.m, c.l), build(c, P));
    auto direct = [&](int m, int l) -> QuasiJacobiForm {
        if (m > 0) return base.at({m, l});
        return GQ(-1) * base.at({-m, -l});
    };
    for (int m = -4; m <= 4; ++m)
        for (int l = -4; l <= 4; ++l) {
            if (m == 0 || !derivable(m, l)) continue;
            QuasiJacobiForm f = available(m, l) ? direct(m, l) : GQ(rat(m, l)) * direct(l, m);
            QSeries s = f.series;
            if (m == l) s -= QSeries::constant(SRat(sgn_int(m)), s.q_max());
            forms_.emplace(std::make_pair(m, l), std::move(f));
            series_.emplace(std::make_pair(m, l), std::move(s));
        }
    for (int l = -4; l <= 4; ++l)
        if (l != 0) series_.emplace(std::make_pair(0, l), QSeries(0, q_max));
}

const QSeries& PhiTable::get(int m, int l) const {
    auto it = series_.find({m, l});
    if (it == series_.end()) throw MissingPhi(m, l);
    return it->second;
}

const QuasiJacobiForm& PhiTable::shifted_form(int m, int l) const {
    auto it = forms_.find({m, l});
    if (it == forms_.end()) throw MissingPhi(m, l);
    return it->second;
}

}  // namespace k3gw
