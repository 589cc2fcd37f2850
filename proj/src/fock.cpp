#include "k3gw/fock.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace k3gw {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

}  // namespace

RMatrix invert_rational(RMatrix a) {
    int n = static_cast<int>(a.size());
    RMatrix b(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) b[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw std::logic_error("surface model: degenerate pairing");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        Rational inv = 1 / a[c][c];
        for (int j = 0; j < n; ++j) a[c][j] *= inv, b[c][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            Rational f = a[r][c];
            for (int j = 0; j < n; ++j) {
                if (sgn(a[c][j]) != 0) a[r][j] -= f * a[c][j];
                if (sgn(b[c][j]) != 0) b[r][j] -= f * b[c][j];
            }
        }
    }
    return b;
}

namespace {

// negative Cartan matrix of E8: chain 1-3-4-5-6-7-8 with 2 attached to 4
RMatrix e8_minus() {
    RMatrix m(8, std::vector<Rational>(8, Rational(0)));
    const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (int i = 0; i < 8; ++i) m[i][i] = -2;
    for (auto& e : edges) m[e[0]][e[1]] = m[e[1]][e[0]] = 1;
    return m;
}

SurfaceModel finish(std::string name, std::vector<std::string> deg2, const RMatrix& g2, ClassVec B, ClassVec F) {
    SurfaceModel S;
    S.name = std::move(name);
    int n2 = static_cast<int>(deg2.size());
    int n = n2 + 2;
    S.names.push_back("e");
    for (auto& s : deg2) S.names.push_back(s);
    S.names.push_back("w");
    S.gram.assign(n, std::vector<Rational>(n, Rational(0)));
    S.gram[0][n - 1] = S.gram[n - 1][0] = 1;
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) S.gram[i + 1][j + 1] = g2[i][j];
    S.inv = invert_rational(S.gram);
    S.kdeg.assign(n, 0);
    S.kdeg[0] = -1;
    S.kdeg[n - 1] = 1;
    S.B = std::move(B);
    S.F = std::move(F);
    return S;
}

// lattice part of {B,F}^perp in the rank-24 model: U + U + E8(-1) + E8(-1)
RMatrix perp_gram() {
    RMatrix g(20, std::vector<Rational>(20, Rational(0)));
    for (int u = 0; u < 2; ++u) g[2 * u][2 * u + 1] = g[2 * u + 1][2 * u] = 1;
    RMatrix e8 = e8_minus();
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) g[4 + 8 * b + i][4 + 8 * b + j] = e8[i][j];
    return g;
}

std::vector<std::string> g_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("g" + std::to_string(i));
    return out;
}

}  // namespace

int SurfaceModel::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    std::string valid;
    for (auto& s : names) valid += (valid.empty() ? "" : " ") + s;
    throw std::invalid_argument("unknown class '" + name + "' in model " + this->name + " (valid: " + valid + ")");
}

Rational SurfaceModel::pair(int a, const ClassVec& c) const {
    Rational r = 0;
    for (auto& [i, x] : c)
        if (sgn(gram[a][i]) != 0) r += gram[a][i] * x;
    return r;
}

Rational SurfaceModel::pair(const ClassVec& a, const ClassVec& b) const {
    Rational r = 0;
    for (auto& [i, x] : a) r += x * pair(i, b);
    return r;
}

ClassVec SurfaceModel::cup(int a, int b) const {
    if (a == e()) return {{b, Rational(1)}};
    if (b == e()) return {{a, Rational(1)}};
    if (degree2(a) && degree2(b) && sgn(gram[a][b]) != 0) return {{w(), gram[a][b]}};
    return {};
}

std::vector<std::tuple<int, int, Rational>> SurfaceModel::tau2(int a) const {
    std::map<std::pair<int, int>, Rational> acc;
    for (int i = 0; i < size(); ++i)
        for (auto& [t, c] : cup(a, i))
            for (int j = 0; j < size(); ++j)
                if (sgn(inv[i][j]) != 0) acc[{t, j}] += c * inv[i][j];
    std::vector<std::tuple<int, int, Rational>> out;
    for (auto& [k, v] : acc)
        if (sgn(v) != 0) out.emplace_back(k.first, k.second, v);
    return out;
}

SurfaceModel SurfaceModel::k3_rank24() {
    RMatrix g(22, std::vector<Rational>(22, Rational(0)));
    g[0][0] = -2;  // B = u - v
    g[0][1] = g[1][0] = 1;
    RMatrix p = perp_gram();
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) g[2 + i][2 + j] = p[i][j];
    std::vector<std::string> names{"B", "F"};
    for (auto& s : g_names(20)) names.push_back(s);
    return finish("k3-rank24", names, g, {{1, Rational(1)}}, {{2, Rational(1)}});
}

SurfaceModel SurfaceModel::k3_rank24_orth() {
    // Gram-Schmidt over Q on each block of the perp lattice; U blocks go to u+v, u-v
    RMatrix p = perp_gram();
    std::vector<std::vector<Rational>> basis;  // coordinates in the lattice basis
    for (int u = 0; u < 2; ++u) {
        std::vector<Rational> a(20, Rational(0)), b(20, Rational(0));
        a[2 * u] = a[2 * u + 1] = 1;
        b[2 * u] = 1;
        b[2 * u + 1] = -1;
        basis.push_back(a);
        basis.push_back(b);
    }
    auto form = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational r = 0;
        for (int i = 0; i < 20; ++i)
            if (sgn(x[i]) != 0)
                for (int j = 0; j < 20; ++j)
                    if (sgn(y[j]) != 0 && sgn(p[i][j]) != 0) r += x[i] * p[i][j] * y[j];
        return r;
    };
    for (int blk = 0; blk < 2; ++blk) {
        std::size_t start = basis.size();
        for (int i = 0; i < 8; ++i) {
            std::vector<Rational> v(20, Rational(0));
            v[4 + 8 * blk + i] = 1;
            for (std::size_t k = start; k < basis.size(); ++k) {
                Rational c = form(v, basis[k]) / form(basis[k], basis[k]);
                for (int j = 0; j < 20; ++j) v[j] -= c * basis[k][j];
            }
            basis.push_back(v);
        }
    }
    RMatrix g(22, std::vector<Rational>(22, Rational(0)));
    g[0][1] = g[1][0] = 1;  // F, W
    for (int i = 0; i < 20; ++i) g[2 + i][2 + i] = form(basis[i], basis[i]);
    std::vector<std::string> names{"F", "W"};
    for (auto& s : g_names(20)) names.push_back(s);
    return finish("k3-rank24-orth", names, g, {{2, Rational(1)}, {1, Rational(-1)}}, {{1, Rational(1)}});
}

SurfaceModel SurfaceModel::mini() {
    RMatrix g{{Rational(-2), Rational(1), Rational(0)},
              {Rational(1), Rational(0), Rational(0)},
              {Rational(0), Rational(0), Rational(-2)}};
    return finish("mini", {"B", "F", "g1"}, g, {{1, Rational(1)}}, {{2, Rational(1)}});
}

std::vector<std::string> SurfaceModel::model_names() { return {"k3-rank24", "k3-rank24-orth", "mini"}; }

SurfaceModel SurfaceModel::by_name(const std::string& name) {
    if (name == "k3-rank24") return k3_rank24();
    if (name == "k3-rank24-orth") return k3_rank24_orth();
    if (name == "mini") return mini();
    throw std::invalid_argument("unknown surface model '" + name + "' (valid: k3-rank24 k3-rank24-orth mini)");
}

// ---------------------------------------------------------------------------

NakMonomial::NakMonomial(std::vector<std::pair<int, int>> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end());
}

int NakMonomial::energy() const {
    int d = 0;
    for (auto& [m, c] : parts) d += m;
    return d;
}

int NakMonomial::kdeg(const SurfaceModel& S) const {
    int k = 0;
    for (auto& [m, c] : parts) k += S.kdeg[c];
    return k;
}

NakMonomial NakMonomial::with(int m, int cls) const {
    NakMonomial r = *this;
    auto it = std::upper_bound(r.parts.begin(), r.parts.end(), std::make_pair(m, cls));
    r.parts.insert(it, {m, cls});
    return r;
}

NakMonomial NakMonomial::without(std::size_t i) const {
    NakMonomial r = *this;
    r.parts.erase(r.parts.begin() + static_cast<long>(i));
    return r;
}

std::string NakMonomial::str(const SurfaceModel& S) const {
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        out += "p(-" + std::to_string(it->first) + "," + S.names[it->second] + ") ";
    return out + "1";
}

NakMonomial NakMonomial::parse(const SurfaceModel& S, const std::string& text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument(what + "\n  " + text + "\n  " + std::string(pos, ' ') + "^");
    };
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    };
    std::vector<std::pair<int, int>> parts;
    for (;;) {
        skip();
        if (pos >= text.size()) fail("expected 'p(' or the vacuum '1'");
        if (text[pos] == '1') {
            ++pos;
            skip();
            if (pos != text.size()) fail("unexpected text after the vacuum '1'");
            break;
        }
        if (text[pos] != 'p') fail("expected 'p(' or the vacuum '1'");
        ++pos;
        expect('(');
        skip();
        std::size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string num = text.substr(start, pos - start);
        if (num.empty() || num == "-") {
            pos = start;
            fail("expected an integer mode");
        }
        int m = std::stoi(num);
        if (m >= 0) {
            pos = start;
            fail("only creation operators p(-n, class) with n > 0 may build a state");
        }
        expect(',');
        skip();
        start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        std::string cls = text.substr(start, pos - start);
        int idx = -1;
        try {
            idx = S.index(cls);
        } catch (const std::invalid_argument& e) {
            pos = start;
            fail(e.what());
        }
        expect(')');
        parts.emplace_back(-m, idx);
    }
    return NakMonomial(std::move(parts));
}

// ---------------------------------------------------------------------------

FockVector::FockVector(const NakMonomial& m, const Rational& c) {
    if (sgn(c) != 0) terms.emplace(m, c);
}

void FockVector::add(const NakMonomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (auto& [m, c] : o.terms) add(m, c);
    return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [m, x] : terms) x *= c;
    return *this;
}

std::string FockVector::str(const SurfaceModel& S) const {
    if (terms.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + rational_str(c) + ") " + m.str(S);
    }
    return out;
}

std::vector<NakMonomial> nakajima_basis(const SurfaceModel& S, int d) {
    std::vector<NakMonomial> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(int, std::pair<int, int>)> rec = [&](int left, std::pair<int, int> lo) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int m = lo.first; m <= left; ++m)
            for (int c = (m == lo.first ? lo.second : 0); c < S.size(); ++c) {
                cur.emplace_back(m, c);
                rec(left - m, {m, c});
                cur.pop_back();
            }
    };
    rec(d, {1, 0});
    std::sort(out.begin(), out.end());
    return out;
}

FockVector nak_apply(const SurfaceModel& S, int m, const ClassVec& cls, const FockVector& v) {
    FockVector out;
    if (m == 0) throw std::invalid_argument("nak_apply: m = 0 acts on scalars, use p0_apply");
    for (auto& [mono, c] : v.terms) {
        if (m < 0) {
            for (auto& [a, x] : cls) out.add(mono.with(-m, a), c * x);
            continue;
        }
        for (std::size_t i = 0; i < mono.parts.size(); ++i) {
            if (mono.parts[i].first != m) continue;
            Rational g = S.pair(mono.parts[i].second, cls);
            if (sgn(g) != 0) out.add(mono.without(i), -m * g * c);
        }
    }
    return out;
}

FockVector nak_apply(const SurfaceModel& S, int m, int cls, const FockVector& v) {
    return nak_apply(S, m, ClassVec{{cls, Rational(1)}}, v);
}

Rational inner(const SurfaceModel& S, const NakMonomial& mu, const NakMonomial& nu) {
    if (mu.energy() != nu.energy() || mu.parts.size() != nu.parts.size()) return 0;
    if (mu.is_vacuum()) return 1;
    // <p_{-n}(a) mu' | nu> = (-1)^n <mu' | p_n(a) nu>
    auto [n, a] = mu.parts.back();
    NakMonomial rest = mu.without(mu.parts.size() - 1);
    Rational sum = 0;
    for (std::size_t i = 0; i < nu.parts.size(); ++i) {
        if (nu.parts[i].first != n) continue;
        Rational g = S.pair(a, nu.parts[i].second);
        if (sgn(g) == 0) continue;
        sum += -n * g * inner(S, rest, nu.without(i));
    }
    return n % 2 ? Rational(-sum) : sum;
}

Rational inner(const SurfaceModel& S, const FockVector& mu, const FockVector& nu) {
    Rational r = 0;
    for (auto& [a, x] : mu.terms)
        for (auto& [b, y] : nu.terms) {
            Rational p = inner(S, a, b);
            if (sgn(p) != 0) r += x * y * p;
        }
    return r;
}

FockVector L0_apply(const SurfaceModel& S, const ClassVec& gamma, const FockVector& v) {
    for (auto& [a, x] : gamma)
        if (a == S.w() && sgn(x) != 0) throw std::invalid_argument("L0_apply: gamma must be e or of degree 2");
    // derivation: each part p_{-k}(a) becomes k p_{-k}(a cup gamma)
    FockVector out;
    for (auto& [mono, c] : v.terms)
        for (std::size_t i = 0; i < mono.parts.size(); ++i) {
            auto [k, a] = mono.parts[i];
            NakMonomial rest = mono.without(i);
            for (auto& [g, x] : gamma)
                for (auto& [t, y] : S.cup(a, g)) out.add(rest.with(k, t), c * k * x * y);
        }
    return out;
}

FockVector L0_apply(const SurfaceModel& S, int cls, const FockVector& v) {
    return L0_apply(S, ClassVec{{cls, Rational(1)}}, v);
}

FockVector lehn_delta_apply(const SurfaceModel& S, const FockVector& v) {
    FockVector out;
    std::vector<std::vector<std::tuple<int, int, Rational>>> tau(S.size());
    for (int a = 0; a < S.size(); ++a) tau[a] = S.tau2(a);
    for (auto& [mono, c] : v.terms) {
        const auto& P = mono.parts;
        // split: p_{-i} p_{-j} p_{i+j} tau_3*, one part of size n into two, factor n/2 per ordered (i, j)
        for (std::size_t p = 0; p < P.size(); ++p) {
            auto [n, t] = P[p];
            if (n < 2) continue;
            NakMonomial rest = mono.without(p);
            for (int i = 1; i < n; ++i)
                for (auto& [a, b, x] : tau[t]) out.add(rest.with(i, a).with(n - i, b), c * x * rat(n, 2));
        }
        // merge: p_i p_j p_{-(i+j)} tau_3*, each unordered pair of parts, factor -ij
        for (std::size_t p = 0; p < P.size(); ++p)
            for (std::size_t q = p + 1; q < P.size(); ++q) {
                auto [i, a] = P[p];
                auto [j, b] = P[q];
                NakMonomial rest = mono.without(q).without(p);
                for (auto& [t, x] : S.cup(a, b)) out.add(rest.with(i + j, t), -c * i * j * x);
            }
    }
    return out;
}

QSeries p0_apply(const SurfaceModel& S, const ClassVec& gamma, const QSeries& x) {
    for (auto& [a, c] : gamma)
        if (!S.degree2(a) && sgn(c) != 0) throw std::invalid_argument("p0_apply: gamma must be of degree 2");
    Rational b = S.pair(gamma, S.B), f = S.pair(gamma, S.F);
    QSeries out = x * GQ(b + f);
    if (sgn(f) != 0) out += x.dq() * GQ(f);
    return out;
}

FockVector divisor_class(const SurfaceModel& S, int cls, int d) {
    if (d < 1) throw std::invalid_argument("divisor_class: d >= 1");
    std::vector<std::pair<int, int>> p{{1, cls}};
    Rational fact = 1;
    for (int i = 1; i < d; ++i) p.emplace_back(1, S.e()), fact *= i;
    return FockVector(NakMonomial(p), 1 / fact);
}

FockVector curve_class(const SurfaceModel& S, int cls, int d) {
    if (d < 1) throw std::invalid_argument("curve_class: d >= 1");
    std::vector<std::pair<int, int>> p{{1, cls}};
    for (int i = 1; i < d; ++i) p.emplace_back(1, S.w());
    return FockVector(NakMonomial(p));
}

FockVector diagonal_class(const SurfaceModel& S, int d) {
    if (d < 2) throw std::invalid_argument("diagonal_class: d >= 2");
    std::vector<std::pair<int, int>> p{{2, S.e()}};
    Rational fact = 1;
    for (int i = 2; i < d; ++i) p.emplace_back(1, S.e()), fact *= i - 1;
    return FockVector(NakMonomial(p), 1 / fact);
}

FockVector exceptional_curve(const SurfaceModel& S, int d) {
    if (d < 2) throw std::invalid_argument("exceptional_curve: d >= 2");
    std::vector<std::pair<int, int>> p{{2, S.w()}};
    for (int i = 2; i < d; ++i) p.emplace_back(1, S.w());
    return FockVector(NakMonomial(p));
}

}  // namespace k3gw
