#include "k3gw/ematrix.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

namespace k3gw {

namespace {

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void axpy(DiffOp& acc, const Rational& c, const DiffOp& x) {
    if (x.is_zero() || sgn(c) == 0) return;
    if (acc.a.size() < x.a.size()) {
        std::size_t old = acc.a.size();
        acc.a.resize(x.a.size());
        for (std::size_t j = old; j < x.a.size(); ++j) acc.a[j] = x.a[j] * GQ(c);
        for (std::size_t j = 0; j < old; ++j) acc.a[j] += x.a[j] * GQ(c);
        return;
    }
    for (std::size_t j = 0; j < x.a.size(); ++j) acc.a[j] += c == 1 ? x.a[j] : x.a[j] * GQ(c);
}

// M[phi f]: sum_j A_j D^j (phi f) = sum_i (sum_{j >= i} C(j,i) A_j D^{j-i} phi) D^i f
DiffOp mul_phi(const DiffOp& M, const QSeries& phi, int q_max) {
    DiffOp out;
    std::size_t J = M.a.size();
    std::vector<QSeries> dphi{phi};
    for (std::size_t k = 1; k < J; ++k) dphi.push_back(dphi.back().dq());
    out.a.resize(J);
    for (std::size_t i = 0; i < J; ++i) {
        std::optional<QSeries> s;
        for (std::size_t j = i; j < J; ++j) {
            QSeries t = M.a[j] * dphi[j - i];
            if (j > i) t *= GQ(binom(static_cast<int>(j), static_cast<int>(i)));
            s = s ? *s + t : t;
        }
        out.a[i] = s->truncated(q_max);
    }
    return out;
}

// p_0(alpha) after M: (a + b) A_j + b D A_j at order j, b A_j at order j + 1
DiffOp apply_p0(const Rational& a, const Rational& b, const DiffOp& M) {
    DiffOp out;
    std::size_t J = M.a.size();
    for (std::size_t j = 0; j < J; ++j) {
        QSeries t = M.a[j] * GQ(a + b);
        if (sgn(b) != 0) t += M.a[j].dq() * GQ(b);
        if (j > 0 && sgn(b) != 0) t += M.a[j - 1] * GQ(b);
        out.a.push_back(std::move(t));
    }
    if (J > 0 && sgn(b) != 0) out.a.push_back(M.a[J - 1] * GQ(b));
    return out;
}

// classes that pair with nothing but themselves and are orthogonal to B and F;
// a matrix element with an odd number of such parts vanishes
std::vector<bool> isolated_classes(const SurfaceModel& S) {
    std::vector<bool> iso(S.size(), false);
    for (int c = 0; c < S.size(); ++c) {
        if (!S.degree2(c)) continue;
        bool ok = sgn(S.pair(c, S.B)) == 0 && sgn(S.pair(c, S.F)) == 0;
        for (int x = 0; x < S.size() && ok; ++x)
            if (x != c && sgn(S.gram[c][x]) != 0) ok = false;
        iso[c] = ok;
    }
    return iso;
}

bool parity_vanishes(const std::vector<bool>& iso, const NakMonomial& mu, const NakMonomial& nu) {
    std::vector<int> odd;
    for (const auto* m : {&mu, &nu})
        for (auto& [k, c] : m->parts)
            if (iso[c]) {
                auto it = std::find(odd.begin(), odd.end(), c);
                if (it == odd.end())
                    odd.push_back(c);
                else
                    odd.erase(it);
            }
    return !odd.empty();
}

unsigned pick_threads(unsigned threads) {
    if (threads) return threads;
    unsigned h = std::thread::hardware_concurrency();
    return h ? std::min(h, 16u) : 1u;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    threads = pick_threads(threads);
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

EEngine::EEngine(const SurfaceModel& S, const PhiTable& phi, int q_max, Peel peel)
    : S_(S), phi_(phi), q_max_(q_max), peel_(peel) {
    if (phi.q_max() < q_max + 1)
        throw std::invalid_argument("EEngine: the phi table must reach q^" + std::to_string(q_max + 1));
    int Q = std::max(q_max + 2, 0);
    QSeries F = generator("F", Q).series;
    QSeries Delta = eta_and_delta(Q).second;
    base_ = (F * F * Delta).inverse().truncated(q_max);
    iso_ = isolated_classes(S);
}

std::size_t EEngine::memo_size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
}

std::shared_ptr<const DiffOp> EEngine::op_ptr(int r, const NakMonomial& mu, const NakMonomial& nu) {
    static const auto zero = std::make_shared<const DiffOp>();
    if (nu.energy() - mu.energy() != r) return zero;
    if (mu.kdeg(S_) + nu.kdeg(S_) != 0) return zero;
    if (parity_vanishes(iso_, mu, nu)) return zero;
    Key key{r, mu, nu};
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    auto val = std::make_shared<const DiffOp>(compute(r, mu, nu));
    std::unique_lock lock(mu_);
    return memo_.emplace(std::move(key), std::move(val)).first->second;
}

DiffOp EEngine::op(int r, const NakMonomial& mu, const NakMonomial& nu) { return *op_ptr(r, mu, nu); }

DiffOp EEngine::op(int r, const FockVector& mu, const FockVector& nu) {
    DiffOp acc;
    for (auto& [a, x] : mu.terms)
        for (auto& [b, y] : nu.terms) axpy(acc, x * y, *op_ptr(r, a, b));
    return acc;
}

QSeries EEngine::element(int r, const NakMonomial& mu, const NakMonomial& nu) {
    auto p = op_ptr(r, mu, nu);
    return p->is_zero() ? QSeries(-1, q_max_) : p->a[0];
}

QSeries EEngine::element(int r, const FockVector& mu, const FockVector& nu) {
    DiffOp d = op(r, mu, nu);
    return d.is_zero() ? QSeries(-1, q_max_) : d.a[0];
}

DiffOp EEngine::compute(int r, const NakMonomial& mu, const NakMonomial& nu) {
    if (mu.is_vacuum() && nu.is_vacuum()) {
        DiffOp d;
        if (r == 0) d.a.push_back(base_);
        return d;
    }
    bool use_mu = peel_ == Peel::mu_first ? !mu.is_vacuum() : nu.is_vacuum();
    return use_mu ? peel_mu(r, mu, nu) : peel_nu(r, mu, nu);
}

// <p_{-n}(a) mu' | E^(r) f nu> = (-1)^n <mu' | (E^(r) p_n(a) + [p_n(a), E^(r)]) f nu>
DiffOp EEngine::peel_mu(int r, const NakMonomial& mu, const NakMonomial& nu) {
    auto [n, a] = mu.parts.back();
    NakMonomial rest = mu.without(mu.parts.size() - 1);
    Rational sign = n % 2 ? -1 : 1;
    DiffOp acc;
    FockVector v = nak_apply(S_, n, a, FockVector(nu));
    if (!v.is_zero()) axpy(acc, sign, op(r, FockVector(rest), v));
    commutator_terms(acc, sign, n, a, r, rest, nu);
    return acc;
}

// <mu | E^(r) p_{-n}(g) f nu'> = (-1)^n <p_n(g) mu | E^(r) f nu'> - <mu | [p_{-n}(g), E^(r)] f nu'>
DiffOp EEngine::peel_nu(int r, const NakMonomial& mu, const NakMonomial& nu) {
    auto [n, g] = nu.parts.back();
    NakMonomial rest = nu.without(nu.parts.size() - 1);
    DiffOp acc;
    FockVector v = nak_apply(S_, n, g, FockVector(mu));
    if (!v.is_zero()) axpy(acc, Rational(n % 2 ? -1 : 1), op(r, v, FockVector(rest)));
    commutator_terms(acc, Rational(-1), -n, g, r, mu, rest);
    return acc;
}

// sum_l (l/m)^{k(alpha)} <bra| :p_l(alpha) E^(r+m-l): phi_{m,l} f |ket>, scaled by sign
void EEngine::commutator_terms(DiffOp& acc, const Rational& sign, int m, int alpha, int r, const NakMonomial& bra,
                               const NakMonomial& ket) {
    int k = S_.kdeg[alpha];
    auto coef = [&](int l) -> Rational {
        if (k == 0) return 1;
        return k < 0 ? Rational(m) / l : Rational(l) / m;
    };
    FockVector bra_v(bra), ket_v(ket);
    for (int l = 1; l <= ket.energy(); ++l) {
        FockVector v = nak_apply(S_, l, alpha, ket_v);
        if (v.is_zero()) continue;
        DiffOp d = op(r + m - l, bra_v, v);
        if (d.is_zero()) continue;
        axpy(acc, sign * coef(l), mul_phi(d, phi_.get(m, l), q_max_));
    }
    for (int l = -1; l >= -bra.energy(); --l) {
        // <bra | p_l(alpha) X> = (-1)^l <p_{-l}(alpha) bra | X>
        FockVector v = nak_apply(S_, -l, alpha, bra_v);
        if (v.is_zero()) continue;
        DiffOp d = op(r + m - l, v, ket_v);
        if (d.is_zero()) continue;
        Rational c = sign * coef(l) * (l % 2 ? -1 : 1);
        axpy(acc, c, mul_phi(d, phi_.get(m, l), q_max_));
    }
    if (k == 0) {
        Rational pb = S_.pair(alpha, S_.B), pf = S_.pair(alpha, S_.F);
        if (sgn(pb) == 0 && sgn(pf) == 0) return;
        DiffOp d = op(r + m, bra_v, ket_v);
        if (d.is_zero()) return;
        axpy(acc, sign, apply_p0(pb, pf, mul_phi(d, phi_.get(m, 0), q_max_)));
    }
}

QSeries ehilb_bracket(EEngine& E, const FockVector& mu, const FockVector& nu) {
    int d = -1;
    for (const auto* v : {&mu, &nu})
        for (auto& [m, c] : v->terms) {
            if (d >= 0 && m.energy() != d) throw std::invalid_argument("ehilb_bracket: states of different energy");
            d = m.energy();
        }
    QSeries out = E.element(0, mu, nu);
    Rational p = inner(E.model(), mu, nu);
    if (sgn(p) != 0) {
        QSeries G = generator("G", std::max(E.q_max() + 1, 0)).series;
        out -= (G.pow(d) * E.vacuum_value()).truncated(E.q_max()) * GQ(p);
    }
    return out;
}

// ---------------------------------------------------------------------------

OperatorCheckReport wdvv_operator_check(EEngine& E, int d, const std::string& mode, int samples,
                                        unsigned threads) {
    const SurfaceModel& S = E.model();
    if (d < 1) throw std::invalid_argument("wdvv_operator_check: d >= 1");
    if (mode != "full" && mode != "sampled") throw std::invalid_argument("wdvv_operator_check: mode full|sampled");
    auto basis = nakajima_basis(S, d);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis[i].kdeg(S) + basis[j].kdeg(S) == -1) pairs.emplace_back(i, j);
    if (mode == "sampled" && static_cast<std::size_t>(samples) < pairs.size()) {
        std::mt19937_64 rng(20240607u + d);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        pairs.resize(samples);
        std::sort(pairs.begin(), pairs.end());
    }
    std::vector<int> classes;
    for (int c = 0; c < S.size(); ++c)
        if (S.degree2(c)) classes.push_back(c);

    std::vector<std::string> failure(pairs.size());
    std::atomic<long> checked{0};
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const FockVector Te(basis[pairs[idx].first]), Tf(basis[pairs[idx].second]);
        auto comm = [&](const FockVector& OTe, const FockVector& OTf) {
            return E.element(0, Te, OTf) - E.element(0, OTe, Tf);
        };
        std::vector<QSeries> C;
        for (int c : classes) C.push_back(comm(L0_apply(S, c, Te), L0_apply(S, c, Tf)));
        QSeries Dl = comm(lehn_delta_apply(S, Te), lehn_delta_apply(S, Tf));
        auto P = [&](std::size_t i, const QSeries& x) { return p0_apply(S, {{classes[i], Rational(1)}}, x); };
        auto where = [&](const std::string& what) {
            return what + " at <" + basis[pairs[idx].first].str(S) + " | . | " + basis[pairs[idx].second].str(S) +
                   ">";
        };
        long n = 0;
        for (std::size_t i = 0; i < classes.size() && failure[idx].empty(); ++i) {
            for (std::size_t j = i + 1; j < classes.size(); ++j, ++n)
                if (!(P(i, C[j]) - P(j, C[i])).is_zero()) {
                    failure[idx] = where("identity 1 for (" + S.names[classes[i]] + ", " + S.names[classes[j]] + ")");
                    break;
                }
            ++n;
            if (failure[idx].empty() && !(P(i, Dl) - C[i].dz()).is_zero())
                failure[idx] = where("identity 2 for " + S.names[classes[i]]);
        }
        checked += n;
    });
    OperatorCheckReport rep;
    rep.checked = checked;
    for (auto& f : failure)
        if (!f.empty()) {
            rep.ok = false;
            rep.first_failure = f;
            break;
        }
    rep.notes.push_back(std::to_string(pairs.size()) + " basis pairs at d = " + std::to_string(d) + ", model " +
                        S.name + ", q^" + std::to_string(E.q_max()));
    return rep;
}

SRat eb_element(const SurfaceModel& S, int r, const NakMonomial& mu, const NakMonomial& nu) {
    if (nu.energy() - mu.energy() != r) return SRat();
    if (mu.is_vacuum() && nu.is_vacuum()) {
        // y/(1+y)^2 = -s^2 / ((s-1)^2 (s+1)^2)
        return SRat(SLaurent::monomial(2, GQ(-1)), {-2, 0, -2, 0});
    }
    auto gap = [](int n) { return SRat(SLaurent::monomial(-n) - SLaurent::monomial(n)); };  // s^-n - s^n
    if (!mu.is_vacuum()) {
        auto [n, a] = mu.parts.back();
        NakMonomial rest = mu.without(mu.parts.size() - 1);
        SRat acc;
        for (auto& [m, c] : nak_apply(S, n, a, FockVector(nu)).terms) acc += eb_element(S, r, rest, m) * GQ(c);
        Rational b = S.pair(a, S.B);
        if (sgn(b) != 0) acc += gap(n) * eb_element(S, r + n, rest, nu) * GQ(b);
        return n % 2 ? -acc : acc;
    }
    auto [n, g] = nu.parts.back();
    NakMonomial rest = nu.without(nu.parts.size() - 1);
    Rational b = S.pair(g, S.B);
    if (sgn(b) == 0) return SRat();
    // -<g,B>(s^n - s^-n) <1 | E_B^(r-n) nu'>
    return gap(n) * eb_element(S, r - n, mu, rest) * GQ(b);
}

OperatorCheckReport a1_restriction_check(const SurfaceModel& S, const PhiTable& phi, int d_max, int s_degree) {
    OperatorCheckReport rep;
    // leading terms: phi_{m,0} = s^{-m} - s^m + O(q), phi_{m,l} = O(q) otherwise
    for (int m = -4; m <= 4; ++m)
        for (int l = -4; l <= 4; ++l) {
            if (m == 0 || !PhiTable::derivable(m, l)) continue;
            SRat want = l == 0 ? SRat(SLaurent::monomial(-m) - SLaurent::monomial(m)) : SRat();
            if (phi.get(m, l)[0] != want) {
                rep.ok = false;
                rep.first_failure = "q^0 term of phi_{" + std::to_string(m) + "," + std::to_string(l) + "}";
                return rep;
            }
            ++rep.checked;
        }
    EEngine E(S, phi, -1);
    SRat yy = eb_element(S, 0, NakMonomial{}, NakMonomial{});
    for (int d = 1; d <= d_max && rep.ok; ++d) {
        auto basis = nakajima_basis(S, d);
        long count = 0, nonzero = 0;
        for (const auto& mu : basis) {
            for (const auto& nu : basis) {
                if (mu.kdeg(S) + nu.kdeg(S) != 0) continue;
                ++count;
                SRat lhs = ehilb_bracket(E, FockVector(mu), FockVector(nu))[-1] + yy * GQ(inner(S, mu, nu));
                SRat rhs = eb_element(S, 0, mu, nu);
                if (!rhs.is_zero()) ++nonzero;
                if (lhs != rhs || lhs.expand_at_zero(s_degree) != rhs.expand_at_zero(s_degree)) {
                    rep.ok = false;
                    rep.first_failure = "<" + mu.str(S) + " | . | " + nu.str(S) + ">: " + lhs.str() + " vs " + rhs.str();
                    break;
                }
            }
            if (!rep.ok) break;
        }
        rep.checked += count;
        rep.notes.push_back("d = " + std::to_string(d) + ": " + std::to_string(count) + " pairs (" + std::to_string(nonzero) +
                            " nonzero), model " + S.name);
    }
    return rep;
}

std::optional<int> underline_deg(const SurfaceModel& S, int cls) {
    ClassVec W = S.B;
    for (auto& [i, x] : S.F) {
        auto it = std::find_if(W.begin(), W.end(), [&](auto& p) { return p.first == i; });
        if (it == W.end())
            W.emplace_back(i, x);
        else
            it->second += x;
    }
    auto is = [&](const ClassVec& v) {
        for (auto& [i, x] : v)
            if (sgn(x) != 0 && (i != cls || x != 1)) return false;
        return true;
    };
    if (is(S.F)) return -1;
    if (is(W)) return 1;
    if (sgn(S.pair(cls, S.F)) == 0 && sgn(S.pair(cls, W)) == 0) return 0;
    return std::nullopt;
}

Hilb2Table hilb2_two_point_table(EEngine& E, unsigned threads) {
    const SurfaceModel& S = E.model();
    // H_2 = sum g^{ef} <T_e, T_f>_q over the energy-2 Nakajima basis
    auto basis = nakajima_basis(S, 2);
    RMatrix g(basis.size(), std::vector<Rational>(basis.size(), Rational(0)));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = inner(S, basis[i], basis[j]);
    RMatrix ginv = invert_rational(std::move(g));
    std::map<std::pair<NakMonomial, NakMonomial>, Rational> weights;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (sgn(ginv[i][j]) != 0) weights[{basis[i], basis[j]}] = ginv[i][j];
    Hilb2Table out;
    for (auto& [k, w] : weights)
        if (sgn(w) != 0) out.entries.push_back({k.first, k.second, w, QSeries()});
    parallel_for(out.entries.size(), threads, [&](std::size_t i) {
        auto& e = out.entries[i];
        e.value = ehilb_bracket(E, FockVector(e.mu), FockVector(e.nu));
    });
    std::optional<QSeries> sum;
    for (auto& e : out.entries) {
        QSeries t = e.value * GQ(e.weight);
        sum = sum ? *sum + t : t;
    }
    out.genus1 = sum ? *sum : QSeries(-1, E.q_max());
    return out;
}

}  // namespace k3gw
