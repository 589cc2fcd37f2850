#include "k3gw/srat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k3gw {

namespace {

SLaurent raise(SLaurent n, const SRat::Exps& from, const SRat::Exps& to) {
    for (int r = 0; r < 4; ++r)
        for (int k = to[r]; k < from[r]; ++k) n = n.mul_linear(r);
    return n;
}

}  // namespace

SRat SRat::linear_power(int r, int k) {
    Exps e{0, 0, 0, 0};
    e[r] = k;
    return SRat(SLaurent(1), e, Raw{});
}

void SRat::normalize() {
    if (num_.is_zero()) {
        ex_ = {0, 0, 0, 0};
        return;
    }
    for (int r = 0; r < 4; ++r) {
        while (num_.size() > 1 && num_.eval_unit_root(r).is_zero()) {
            num_ = num_.div_linear(r);
            ++ex_[r];
        }
    }
}

bool SRat::is_real() const {
    if (!num_.is_real()) return false;
    // (s - i)^a (s + i)^b is real only when a == b
    return ex_[1] == ex_[3];
}

SLaurent SRat::to_laurent() const {
    if (!is_laurent()) throw std::domain_error("SRat::to_laurent: has poles");
    SLaurent n = num_;
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < ex_[r]; ++k) n = n.mul_linear(r);
    return n;
}

SLaurent SRat::expand_at_zero(int max_deg) const {
    if (num_.is_zero()) return {};
    int lo = num_.min_exp();
    int n = max_deg - lo;
    if (n < 0) return {};
    std::vector<GQ> ser(n + 1);
    ser[0] = GQ(1);
    auto mul_into = [&](const std::vector<GQ>& f) {
        std::vector<GQ> out(n + 1);
        for (int a = 0; a <= n; ++a) {
            if (ser[a].is_zero()) continue;
            for (int b = 0; a + b <= n && b < static_cast<int>(f.size()); ++b)
                if (!f[b].is_zero()) out[a + b].add_product(ser[a], f[b]);
        }
        ser = std::move(out);
    };
    for (int r = 0; r < 4; ++r) {
        GQ rho = GQ::ipow(r);
        if (ex_[r] >= 0) {
            for (int k = 0; k < ex_[r]; ++k) mul_into({-rho, GQ(1)});
        } else {
            // (s - rho)^{-1} = -rho^{-1} sum_m (s/rho)^m
            GQ rinv = rho.inverse();
            std::vector<GQ> g(n + 1);
            GQ p = -rinv;
            for (int m = 0; m <= n; ++m) {
                g[m] = p;
                p *= rinv;
            }
            for (int k = 0; k < -ex_[r]; ++k) mul_into(g);
        }
    }
    std::vector<SLaurent::Term> terms;
    for (const auto& [e, c] : num_.terms())
        for (int m = 0; e + m <= max_deg && m <= n; ++m)
            if (!ser[m].is_zero()) terms.emplace_back(e + m, c * ser[m]);
    return SLaurent::from_terms(std::move(terms));
}

GQ SRat::eval(const GQ& s) const {
    GQ v = num_.eval(s);
    for (int r = 0; r < 4; ++r) {
        if (ex_[r] == 0) continue;
        GQ f = s - GQ::ipow(r);
        if (f.is_zero()) {
            if (ex_[r] < 0) throw std::domain_error("SRat::eval: pole");
            return GQ(0);
        }
        if (ex_[r] < 0) f = f.inverse();
        for (int k = 0; k < std::abs(ex_[r]); ++k) v *= f;
    }
    return v;
}

SRat& SRat::operator+=(const SRat& o) {
    if (&o == this) return *this *= GQ(2);
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (ex_ == o.ex_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    Exps m;
    for (int r = 0; r < 4; ++r) m[r] = std::min(ex_[r], o.ex_[r]);
    num_ = raise(std::move(num_), ex_, m) + raise(o.num_, o.ex_, m);
    ex_ = m;
    normalize();
    return *this;
}

SRat& SRat::operator*=(const SRat& o) {
    if (is_zero() || o.is_zero()) return *this = SRat();
    num_ = num_ * o.num_;
    for (int r = 0; r < 4; ++r) ex_[r] += o.ex_[r];
    return *this;
}

SRat& SRat::operator*=(const GQ& c) {
    if (c.is_zero()) return *this = SRat();
    num_ *= c;
    return *this;
}

SRat SRat::inverse() const {
    if (!is_unit()) throw std::domain_error("SRat::inverse: not a unit");
    const auto& [e, c] = num_.terms().front();
    Exps ne{-ex_[0], -ex_[1], -ex_[2], -ex_[3]};
    return SRat(SLaurent::monomial(-e, c.inverse()), ne, Raw{});
}

SRat SRat::dz() const {
    if (is_zero()) return {};
    std::vector<int> J;
    for (int r = 0; r < 4; ++r)
        if (ex_[r] != 0) J.push_back(r);
    SLaurent prodJ(1);
    for (int r : J) prodJ = prodJ.mul_linear(r);
    SLaurent acc = num_.euler() * prodJ;
    for (int j : J) {
        SLaurent t = num_.shifted(1) * GQ(ex_[j]);
        for (int k : J)
            if (k != j) t = t.mul_linear(k);
        acc += t;
    }
    acc *= GQ(1, 2);
    Exps ne = ex_;
    for (int r : J) ne[r] -= 1;
    return SRat(std::move(acc), ne);
}

SRat SRat::flip() const {
    SLaurent n = num_.flip();
    Exps ne{ex_[2], ex_[3], ex_[0], ex_[1]};
    int sign = 0;
    for (int r = 0; r < 4; ++r) sign += ex_[r];
    if (sign % 2 != 0) n = -n;
    return SRat(std::move(n), ne, Raw{});
}

SRat SRat::conj() const {
    Exps ne{ex_[0], ex_[3], ex_[2], ex_[1]};
    return SRat(num_.conj(), ne, Raw{});
}

SRat SRat::sum(const std::vector<SRat>& xs) {
    Exps m{0, 0, 0, 0};
    bool any = false;
    for (const auto& x : xs) {
        if (x.is_zero()) continue;
        if (!any) {
            m = x.ex_;
            any = true;
        } else {
            for (int r = 0; r < 4; ++r) m[r] = std::min(m[r], x.ex_[r]);
        }
    }
    if (!any) return {};
    SLaurent acc;
    for (const auto& x : xs)
        if (!x.is_zero()) acc += raise(x.num_, x.ex_, m);
    return SRat(std::move(acc), m);
}

std::string SRat::str() const {
    std::ostringstream os;
    os << "[" << num_.str() << "]";
    static const char* names[4] = {"(s-1)", "(s-i)", "(s+1)", "(s+i)"};
    for (int r = 0; r < 4; ++r)
        if (ex_[r] != 0) os << "*" << names[r] << "^" << ex_[r];
    return os.str();
}

}  // namespace k3gw
