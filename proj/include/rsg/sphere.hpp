#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rsg {

using cplx = std::complex<double>;

// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
public:
    SpherePoint() = default;  // the origin
    SpherePoint(cplx z);      // NOLINT: implicit from finite values is intended
    SpherePoint(double re, double im = 0.0) : SpherePoint(cplx(re, im)) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinite() const noexcept { return inf_; }
    bool is_finite() const noexcept { return !inf_; }

    // Throws InputError for the point at infinity.
    cplx value() const;

    // Coordinate in the chart w = 1/z (infinity maps to 0).
    cplx inverted() const;

    // Stereographic image on the unit sphere in R^3 (infinity = north pole).
    // Euclidean distance between images equals chordal_dist.
    std::array<double, 3> to_r3() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
        return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
    }

private:
    cplx z_{0.0, 0.0};
    bool inf_ = false;
};

// Chordal metric with diameter 2: 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
double chordal_dist(const SpherePoint& p, const SpherePoint& q) noexcept;

// Finite approximation of a subset of the sphere, with enough metadata to
// regenerate it.
struct PointCloud {
    std::vector<SpherePoint> points;
    std::string method_tag;
    nlohmann::json params = nlohmann::json::object();

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

double spherical_diameter(const PointCloud& c);
double spherical_diameter(std::span<const SpherePoint> pts);

// Symmetric Hausdorff distance in the chordal metric.
double hausdorff_dist(const PointCloud& a, const PointCloud& b);
double hausdorff_dist(std::span<const SpherePoint> a, std::span<const SpherePoint> b);

// Removes points within `tol` (chordal) of an earlier point; keeps the first
// occurrence so the output order is stable.
std::vector<SpherePoint> dedupe(std::span<const SpherePoint> pts, double tol);

}  // namespace rsg
