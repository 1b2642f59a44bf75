#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rsg/polynomial.hpp"
#include "rsg/sphere.hpp"

namespace rsg {

// z -> (az + b) / (cz + d), stored with ad - bc = 1.
class MoebiusMap {
public:
    MoebiusMap(cplx a, cplx b, cplx c, cplx d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx a() const noexcept { return m_[0]; }
    cplx b() const noexcept { return m_[1]; }
    cplx c() const noexcept { return m_[2]; }
    cplx d() const noexcept { return m_[3]; }
    cplx trace() const noexcept { return m_[0] + m_[3]; }

    SpherePoint operator()(const SpherePoint& p) const noexcept;

    // Matrix product: (f * g)(z) = f(g(z)).
    friend MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g);

    // Equal as maps: matrices agree up to sign, entrywise within tol.
    bool approx_equal(const MoebiusMap& o, double tol) const noexcept;
    bool is_identity(double tol = 1e-12) const noexcept { return approx_equal(identity(), tol); }

    // Largest singular value squared; equals the spherical Lipschitz constant.
    double operator_norm_squared() const noexcept;

private:
    struct Normalized {};
    // Entries already have determinant 1 in exact arithmetic (products and
    // inverses); renormalizing by a rounded determinant would only add error.
    MoebiusMap(std::array<cplx, 4> m, Normalized) : m_(m) {}
    friend MoebiusMap inverse(const MoebiusMap& m);

    std::array<cplx, 4> m_;
};

MoebiusMap inverse(const MoebiusMap& m);

// Throws InputError for the identity.
bool is_loxodromic(const MoebiusMap& m);

// Nonconstant rational map num/den with no common root (within 1e-9).
class RationalMap {
public:
    RationalMap(Polynomial num, Polynomial den);
    RationalMap(const MoebiusMap& m);  // NOLINT: every Möbius map is rational

    static RationalMap polynomial(Polynomial p) { return {std::move(p), Polynomial{1.0}}; }

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    int degree() const noexcept { return degree_; }

    // The Möbius form of a degree-1 map.
    std::optional<MoebiusMap> moebius() const;

    SpherePoint operator()(const SpherePoint& p) const;

    // Derivative in the ordinary coordinate at a finite non-pole point.
    cplx derivative(cplx z) const;

    // Homogeneous coefficient rows of length degree+1, in ascending powers.
    // P, Q are num/den padded; Pr, Qr are the same rows reversed, i.e. the
    // map in the chart w = 1/z on the source side.
    struct Charts {
        std::vector<cplx> p, q, pr, qr;
    };
    const Charts& charts() const noexcept { return charts_; }

    // Builds without the coprimality scan; for compositions of valid maps.
    static RationalMap unchecked(Polynomial num, Polynomial den);

private:
    struct Unchecked {};
    RationalMap(Polynomial num, Polynomial den, Unchecked);
    void build_charts();

    Polynomial num_, den_;
    int degree_ = 0;
    Charts charts_;
    std::optional<MoebiusMap> moebius_;  // kept when built from a matrix
};

SpherePoint eval(const RationalMap& f, const SpherePoint& p);

// |f'(z)|(1+|z|^2)/(1+|f(z)|^2), evaluated chart-free through the
// homogeneous Wronskian so poles and infinity need no special handling.
double spherical_derivative(const RationalMap& f, const SpherePoint& p);

// Equal as maps: num1*den2 == num2*den1 up to tol relative to coefficient size.
bool approx_equal(const RationalMap& f, const RationalMap& g, double tol = 1e-12);

inline constexpr int kDefaultDegreeCap = 64;

// f o g. Möbius pairs are multiplied as matrices. Throws DegreeCapError when
// deg f * deg g exceeds degree_cap.
RationalMap compose(const RationalMap& f, const RationalMap& g, int degree_cap = kDefaultDegreeCap);

enum class FixedPointClass { superattracting, attracting, indifferent, repelling };

inline constexpr double kMultiplierTolerance = 1e-9;

FixedPointClass classify_multiplier(cplx multiplier) noexcept;
const char* to_string(FixedPointClass c) noexcept;

struct FixedPointRecord {
    SpherePoint location;
    cplx multiplier;
    FixedPointClass kind;
    int multiplicity = 1;
};

// All fixed points on the sphere with multiplicity (they sum to deg f + 1).
// The identity Möbius map has every point fixed and yields an empty list.
std::vector<FixedPointRecord> fixed_points(const RationalMap& f);

// Solutions of f(z) = w, repeated by multiplicity (deg f entries).
std::vector<SpherePoint> preimages(const RationalMap& f, const SpherePoint& w);

// E(f): points with at most two backward-orbit points for deg >= 2, or the
// attracting fixed point of a loxodromic Möbius map. Throws InputError for
// non-loxodromic Möbius maps, where the set is undefined.
std::vector<SpherePoint> exceptional_points(const RationalMap& f);

struct LipschitzOptions {
    double tol = 1e-9;             // relative change that stops the refinement
    std::size_t samples = 200000;  // quasi-uniform sphere samples, both charts
    std::size_t candidates = 50;   // best samples handed to local refinement
};

// sup of the spherical derivative over the sphere. With the chordal metric
// this is the Lipschitz constant of f.
double lipschitz_constant(const RationalMap& f, const LipschitzOptions& opt = {});
inline double lipschitz_constant(const RationalMap& f, double tol) {
    return lipschitz_constant(f, LipschitzOptions{.tol = tol});
}

// Fibonacci lattice on the sphere, each sample stored in the chart where its
// coordinate has modulus <= 1. Deterministic.
std::vector<SpherePoint> sphere_samples(std::size_t n);

}  // namespace rsg
