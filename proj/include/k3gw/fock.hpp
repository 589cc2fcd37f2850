#pragma once

#include "k3gw/qseries.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace k3gw {

using RMatrix = std::vector<std::vector<Rational>>;
// Gauss-Jordan over Q; throws std::logic_error if singular
RMatrix invert_rational(RMatrix a);

// Sparse class in H*(S): (basis index, coefficient).
using ClassVec = std::vector<std::pair<int, Rational>>;

// Basis of H*(S) with its pairing. Index 0 is the unit e, the last index is
// the point class w; everything in between has degree 2.
struct SurfaceModel {
    std::string name;
    std::vector<std::string> names;
    std::vector<std::vector<Rational>> gram;
    std::vector<std::vector<Rational>> inv;  // inverse of gram
    std::vector<int> kdeg;                   // -1, 0, +1
    ClassVec B, F;                           // section and fiber as classes

    int size() const { return static_cast<int>(names.size()); }
    int e() const { return 0; }
    int w() const { return size() - 1; }
    bool degree2(int a) const { return a > 0 && a < w(); }
    int index(const std::string& name) const;  // throws std::invalid_argument
    Rational pair(int a, int b) const { return gram[a][b]; }
    Rational pair(int a, const ClassVec& c) const;
    Rational pair(const ClassVec& a, const ClassVec& b) const;
    ClassVec cup(int a, int b) const;
    // tau_*(gamma_a) = sum g^{ij} (gamma_a cup gamma_i) (x) gamma_j, as (i, j, coef)
    std::vector<std::tuple<int, int, Rational>> tau2(int a) const;

    // U^3 + E8(-1)^2 on B, F, g1..g20 with B = u - v, F = v in the first U
    static SurfaceModel k3_rank24();
    // the same rational space on F, W = B + F and an orthogonal basis g1..g20 of {B,F}^perp
    static SurfaceModel k3_rank24_orth();
    // e, B, F, g1 (g1^2 = -2), w; a sublattice for tests that do not take traces
    static SurfaceModel mini();
    static SurfaceModel by_name(const std::string& name);
    static std::vector<std::string> model_names();
};

// prod p_{-m}(gamma) 1, parts sorted ascending by (m, class)
struct NakMonomial {
    std::vector<std::pair<int, int>> parts;

    NakMonomial() = default;
    explicit NakMonomial(std::vector<std::pair<int, int>> p);
    int energy() const;
    int kdeg(const SurfaceModel& S) const;
    bool is_vacuum() const { return parts.empty(); }
    NakMonomial with(int m, int cls) const;
    NakMonomial without(std::size_t i) const;
    std::string str(const SurfaceModel& S) const;
    // "p(-2,w) p(-1,F) 1"; errors carry a caret line
    static NakMonomial parse(const SurfaceModel& S, const std::string& text);
    friend auto operator<=>(const NakMonomial&, const NakMonomial&) = default;
};

struct FockVector {
    std::map<NakMonomial, Rational> terms;

    FockVector() = default;
    FockVector(const NakMonomial& m, const Rational& c = Rational(1));
    static FockVector vacuum() { return FockVector(NakMonomial{}); }
    bool is_zero() const { return terms.empty(); }
    void add(const NakMonomial& m, const Rational& c);
    FockVector& operator+=(const FockVector& o);
    FockVector& operator*=(const Rational& c);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, FockVector b) { return a += (b *= Rational(-1)); }
    friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
    friend bool operator==(const FockVector&, const FockVector&) = default;
    std::string str(const SurfaceModel& S) const;
};

// All monomials of energy d, in canonical order.
std::vector<NakMonomial> nakajima_basis(const SurfaceModel& S, int d);

FockVector nak_apply(const SurfaceModel& S, int m, int cls, const FockVector& v);
FockVector nak_apply(const SurfaceModel& S, int m, const ClassVec& cls, const FockVector& v);
// <mu | nu> through p_m^dagger = (-1)^m p_{-m}
Rational inner(const SurfaceModel& S, const NakMonomial& mu, const NakMonomial& nu);
Rational inner(const SurfaceModel& S, const FockVector& mu, const FockVector& nu);

// gamma must be e or of degree 2
FockVector L0_apply(const SurfaceModel& S, const ClassVec& gamma, const FockVector& v);
FockVector L0_apply(const SurfaceModel& S, int cls, const FockVector& v);
FockVector lehn_delta_apply(const SurfaceModel& S, const FockVector& v);

// p_0(gamma) on scalars: <gamma,B> + <gamma,F>(q d/dq + 1); gamma of degree 2
QSeries p0_apply(const SurfaceModel& S, const ClassVec& gamma, const QSeries& x);

// D(gamma), C(beta), the diagonal class and A on Hilb^d
FockVector divisor_class(const SurfaceModel& S, int cls, int d);
FockVector curve_class(const SurfaceModel& S, int cls, int d);
FockVector diagonal_class(const SurfaceModel& S, int d);
FockVector exceptional_curve(const SurfaceModel& S, int d);

}  // namespace k3gw
