#pragma once

#include <span>
#include <vector>

#include "rsg/sphere.hpp"

namespace rsg {

// Complex polynomial, coefficients in ascending powers. Trailing exact zeros
// are trimmed, so the zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

    static Polynomial monomial(int degree, cplx c = 1.0);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<cplx>& coeffs() const noexcept { return c_; }
    cplx operator[](int k) const noexcept {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : cplx{};
    }
    cplx leading() const noexcept { return c_.empty() ? cplx{} : c_.back(); }

    cplx operator()(cplx z) const noexcept;
    Polynomial derivative() const;

    // Sum of |a_k| |z|^k, the scale used for relative residuals.
    double abs_eval(double r) const noexcept;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(cplx s, const Polynomial& a);

private:
    std::vector<cplx> c_;
};

struct RootCluster {
    cplx value;
    int multiplicity = 1;
};

inline constexpr double kRootTolerance = 1e-8;
inline constexpr double kRootMergeDistance = 1e-7;

// All roots of p (deg >= 1), found by Aberth-Ehrlich simultaneous iteration
// from a perturbed circle. Roots that end up closer than kRootMergeDistance
// (relative to max(1,|z|)) are merged into one cluster with summed
// multiplicity. Throws NumericalError when some root's relative backward error
// |p(z)| / sum|a_k||z|^k stays above tol.
std::vector<RootCluster> poly_roots(const Polynomial& p, double tol = kRootTolerance);

// Roots repeated by multiplicity.
std::vector<cplx> flatten(std::span<const RootCluster> roots);

}  // namespace rsg
