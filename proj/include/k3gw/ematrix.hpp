#pragma once

#include "k3gw/fock.hpp"
#include "k3gw/phi.hpp"

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace k3gw {

// f -> sum_j a[j] (q d/dq)^j f. Matrix elements of E^(r) are of this shape
// because p_0 differentiates the scalar that E^(r) was applied to.
struct DiffOp {
    std::vector<QSeries> a;
    bool is_zero() const { return a.empty(); }
};

// <mu | E^(r) nu> from Relations 1 and 2, memoized on (r, mu, nu).
// Thread-safe: several threads may query one engine.
class EEngine {
public:
    enum class Peel {
        mu_first,  // peel the largest part of mu; peel nu only against the vacuum
        nu_first,  // peel the largest part of nu; peel mu only against the vacuum
    };

    EEngine(const SurfaceModel& S, const PhiTable& phi, int q_max, Peel peel = Peel::mu_first);

    const SurfaceModel& model() const { return S_; }
    int q_max() const { return q_max_; }
    // 1 / (F^2 Delta) through q_max
    const QSeries& vacuum_value() const { return base_; }

    DiffOp op(int r, const NakMonomial& mu, const NakMonomial& nu);
    QSeries element(int r, const NakMonomial& mu, const NakMonomial& nu);
    QSeries element(int r, const FockVector& mu, const FockVector& nu);
    std::size_t memo_size() const;

private:
    using Key = std::tuple<int, NakMonomial, NakMonomial>;
    DiffOp compute(int r, const NakMonomial& mu, const NakMonomial& nu);
    DiffOp peel_mu(int r, const NakMonomial& mu, const NakMonomial& nu);
    DiffOp peel_nu(int r, const NakMonomial& mu, const NakMonomial& nu);
    // sum over l of the commutator [p_m(alpha), E^(r)] sandwiched between mu and nu, applied to phi f
    void commutator_terms(DiffOp& acc, const Rational& sign, int m, int alpha, int r, const NakMonomial& mu,
                          const NakMonomial& nu);
    DiffOp op(int r, const FockVector& mu, const FockVector& nu);
    std::shared_ptr<const DiffOp> op_ptr(int r, const NakMonomial& mu, const NakMonomial& nu);

    const SurfaceModel& S_;
    const PhiTable& phi_;
    int q_max_;
    Peel peel_;
    QSeries base_;
    std::vector<bool> iso_;
    mutable std::shared_mutex mu_;
    std::map<Key, std::shared_ptr<const DiffOp>> memo_;
};

// <mu | (E^(0) - G^{L0} / (F^2 Delta)) nu>
QSeries ehilb_bracket(EEngine& E, const FockVector& mu, const FockVector& nu);

struct OperatorCheckReport {
    bool ok = true;
    long checked = 0;
    std::string first_failure;
    std::vector<std::string> notes;
};

// Both operator WDVV identities for E^(0) on F_d, with p_0 and y d/dy applied
// to the assembled scalar matrix elements. mode "full" runs every basis pair,
// "sampled" draws `samples` pairs from a fixed seed. threads = 0 picks the hardware count.
OperatorCheckReport wdvv_operator_check(EEngine& E, int d, const std::string& mode, int samples = 200,
                                        unsigned threads = 0);

// [q^{-1}] of E^(0) - G^{L0}/(F^2 Delta) + y/(1+y)^2 against E_B^(0) on the full F_d basis;
// also compares the expansions around s = 0 through s-degree `s_degree`.
OperatorCheckReport a1_restriction_check(const SurfaceModel& S, const PhiTable& phi, int d_max, int s_degree = 12);
// <mu | E_B^(r) nu>
SRat eb_element(const SurfaceModel& S, int r, const NakMonomial& mu, const NakMonomial& nu);

struct Hilb2Table {
    struct Entry {
        NakMonomial mu, nu;
        Rational weight;  // inverse Gram entry g^{mu nu} of the energy-2 pairing
        QSeries value;
    };
    std::vector<Entry> entries;
    QSeries genus1;  // sum g^{ef} <T_e, T_f>_q
};

// Brackets <T_e, T_f>_q for every pair with g^{ef} != 0, and their contraction.
Hilb2Table hilb2_two_point_table(EEngine& E, unsigned threads = 0);

// deg: F -> -1, B + F -> 1, {F, B+F}^perp -> 0; nullopt if the class is not homogeneous
std::optional<int> underline_deg(const SurfaceModel& S, int cls);

}  // namespace k3gw
