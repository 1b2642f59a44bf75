#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rsg/kernels.hpp"
#include "rsg/sphere.hpp"

namespace rsg {

// Ann(center; r1, r2) = {z : r1 < |z - center| < r2}, 0 < r1 < r2 < inf.
class RoundAnnulus {
public:
    RoundAnnulus(cplx center, double r1, double r2);

    cplx center() const noexcept { return c_; }
    double r1() const noexcept { return r1_; }
    double r2() const noexcept { return r2_; }

    // Shrinks both radii toward the middle by the relative margin `rel`.
    RoundAnnulus shrunk(double rel) const { return {c_, r1_ * (1.0 + rel), r2_ * (1.0 - rel)}; }

private:
    cplx c_;
    double r1_, r2_;
};

// (1/2pi) log(r2/r1)
double modulus(const RoundAnnulus& a) noexcept;

// No point strictly inside, at least one in the closed inner disk and at
// least one in the closed outer region (infinity counts as outer). Exact
// comparisons.
bool separates(const RoundAnnulus& a, std::span<const SpherePoint> cloud);
inline bool separates(const RoundAnnulus& a, const PointCloud& cloud) {
    return separates(a, std::span(cloud.points));
}

struct SeparatingAnnulus {
    double modulus;
    RoundAnnulus annulus;
};

inline constexpr int kCenterNeighbours = 8;
inline constexpr std::size_t kExhaustiveCenterLimit = 500;

// Every finite point, plus midpoints: of all pairs when there are at most
// kExhaustiveCenterLimit points, otherwise of each point with its 8 nearest
// neighbours (ties by index). Sorted and free of exact duplicates.
std::vector<cplx> candidate_centers(std::span<const cplx> finite_points);

// Thickest round annulus separating the cloud among the gap-scan candidates:
// centres from candidate_centers, radii consecutive point distances with the
// inner radius clamped up to scale_floor. Absent when nothing separates.
// Throws InputError if the cloud has fewer than two finite points or the
// floor is not positive.
std::optional<SeparatingAnnulus> max_separating_modulus(const PointCloud& cloud, double scale_floor,
                                                        kernels::Exec exec = kernels::Exec::parallel);

// Same search on the inverted cloud {1/p}, for annuli with infinity on the
// inner side. The annulus is reported in inverted coordinates.
std::optional<SeparatingAnnulus> max_separating_modulus_inverted(const PointCloud& cloud, double scale_floor);

struct ProfileEntry {
    double floor;
    std::optional<SeparatingAnnulus> best;
};

// One gap scan evaluated at every floor. floors must be positive and
// non-increasing; the values are then non-decreasing.
std::vector<ProfileEntry> perfectness_profile(const PointCloud& cloud, std::span<const double> floors,
                                              kernels::Exec exec = kernels::Exec::parallel);

}  // namespace rsg
