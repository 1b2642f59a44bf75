#include "rsg/sphere.hpp"

#include <cmath>
#include <unordered_map>

#include "rsg/error.hpp"
#include "rsg/kernels.hpp"

namespace rsg {

SpherePoint::SpherePoint(cplx z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InputError("SpherePoint: non-finite coordinates; use SpherePoint::infinity()");
}

cplx SpherePoint::value() const {
    if (inf_) throw InputError("SpherePoint::value called on the point at infinity");
    return z_;
}

cplx SpherePoint::inverted() const {
    if (inf_) return {0.0, 0.0};
    if (z_ == cplx(0.0, 0.0)) throw InputError("SpherePoint::inverted: 0 maps to infinity");
    return 1.0 / z_;
}

std::array<double, 3> SpherePoint::to_r3() const {
    if (inf_) return {0.0, 0.0, 1.0};
    const double r = std::abs(z_);
    if (r <= 1.0) {
        const double s = 1.0 + r * r;
        return {2.0 * z_.real() / s, 2.0 * z_.imag() / s, (r * r - 1.0) / s};
    }
    // Same map written in w = 1/z to avoid overflow for large |z|.
    const cplx w = 1.0 / z_;
    const double q = std::abs(w);
    const double s = 1.0 + q * q;
    return {2.0 * w.real() / s, -2.0 * w.imag() / s, (1.0 - q * q) / s};
}

double chordal_dist(const SpherePoint& p, const SpherePoint& q) noexcept {
    if (p.is_infinite() && q.is_infinite()) return 0.0;
    if (p.is_infinite() || q.is_infinite()) {
        const cplx z = p.is_infinite() ? q.value() : p.value();
        return 2.0 / std::hypot(1.0, std::abs(z));
    }
    const cplx z = p.value(), w = q.value();
    return 2.0 * std::abs(z - w) / (std::hypot(1.0, std::abs(z)) * std::hypot(1.0, std::abs(w)));
}

double spherical_diameter(std::span<const SpherePoint> pts) {
    if (pts.empty()) throw InputError("spherical_diameter: empty cloud");
    return kernels::diameter_omp(pts);
}

double spherical_diameter(const PointCloud& c) { return spherical_diameter(std::span(c.points)); }

double hausdorff_dist(std::span<const SpherePoint> a, std::span<const SpherePoint> b) {
    if (a.empty() || b.empty()) throw InputError("hausdorff_dist: empty cloud");
    return std::max(kernels::directed_hausdorff_omp(a, b), kernels::directed_hausdorff_omp(b, a));
}

double hausdorff_dist(const PointCloud& a, const PointCloud& b) {
    return hausdorff_dist(std::span(a.points), std::span(b.points));
}

namespace {

struct CellKey {
    long long x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.x) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::size_t>(k.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(k.z) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

std::vector<SpherePoint> dedupe(std::span<const SpherePoint> pts, double tol) {
    const double cell = std::max(tol, 1e-15);
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid;
    std::vector<SpherePoint> out;
    for (const auto& p : pts) {
        const auto x = p.to_r3();
        const CellKey key{static_cast<long long>(std::floor(x[0] / cell)),
                          static_cast<long long>(std::floor(x[1] / cell)),
                          static_cast<long long>(std::floor(x[2] / cell))};
        bool duplicate = false;
        for (long long dx = -1; dx <= 1 && !duplicate; ++dx)
            for (long long dy = -1; dy <= 1 && !duplicate; ++dy)
                for (long long dz = -1; dz <= 1 && !duplicate; ++dz) {
                    auto it = grid.find({key.x + dx, key.y + dy, key.z + dz});
                    if (it == grid.end()) continue;
                    for (std::size_t j : it->second) {
                        if (chordal_dist(p, out[j]) <= tol) {
                            duplicate = true;
                            break;
                        }
                    }
                }
        if (duplicate) continue;
        grid[key].push_back(out.size());
        out.push_back(p);
    }
    return out;
}

}  // namespace rsg
