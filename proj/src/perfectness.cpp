#include "rsg/perfectness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsg/error.hpp"

namespace rsg {

RoundAnnulus::RoundAnnulus(cplx center, double r1, double r2) : c_(center), r1_(r1), r2_(r2) {
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
        throw InputError("RoundAnnulus: non-finite center");
    if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2))
        throw InputError("RoundAnnulus: need 0 < r1 < r2 < inf");
}

double modulus(const RoundAnnulus& a) noexcept {
    return std::log(a.r2() / a.r1()) / (2.0 * std::numbers::pi);
}

bool separates(const RoundAnnulus& a, std::span<const SpherePoint> cloud) {
    bool inner = false, outer = false;
    for (const auto& p : cloud) {
        if (p.is_infinite()) {
            outer = true;
            continue;
        }
        const double d = std::abs(p.value() - a.center());
        if (d <= a.r1())
            inner = true;
        else if (d >= a.r2())
            outer = true;
        else
            return false;
    }
    return inner && outer;
}

std::vector<cplx> candidate_centers(std::span<const cplx> pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<cplx>> mids(n);
    if (n <= kExhaustiveCenterLimit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) mids[i].push_back(0.5 * (pts[i] + pts[j]));
    } else {
        const std::size_t k = std::min<std::size_t>(kCenterNeighbours, n - 1);
        kernels::for_each_index(n, kernels::Exec::parallel, [&](std::size_t i) {
            std::vector<std::pair<double, std::size_t>> d;
            d.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d.emplace_back(std::abs(pts[j] - pts[i]), j);
            std::partial_sort(d.begin(), d.begin() + static_cast<long>(k), d.end());
            for (std::size_t t = 0; t < k; ++t) mids[i].push_back(0.5 * (pts[i] + pts[d[t].second]));
        });
    }
    std::vector<cplx> out(pts.begin(), pts.end());
    for (auto& m : mids) out.insert(out.end(), m.begin(), m.end());
    auto lex = [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
    std::sort(out.begin(), out.end(), lex);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<cplx> finite_part(const PointCloud& cloud) {
    std::vector<cplx> pts;
    for (const auto& p : cloud.points)
        if (p.is_finite()) pts.push_back(p.value());
    if (pts.size() < 2) throw InputError("max_separating_modulus: need at least two finite points");
    return pts;
}

std::optional<SeparatingAnnulus> to_result(const std::optional<kernels::GapHit>& hit) {
    if (!hit) return std::nullopt;
    RoundAnnulus a(hit->center, hit->r1, hit->r2);
    return SeparatingAnnulus{modulus(a), a};
}

}  // namespace

std::vector<ProfileEntry> perfectness_profile(const PointCloud& cloud, std::span<const double> floors,
                                              kernels::Exec exec) {
    for (std::size_t i = 0; i < floors.size(); ++i) {
        if (!(floors[i] > 0.0) || !std::isfinite(floors[i]))
            throw InputError("perfectness_profile: floors must be positive");
        if (i > 0 && floors[i] > floors[i - 1])
            throw InputError("perfectness_profile: floors must be descending");
    }
    const auto pts = finite_part(cloud);
    const auto centers = candidate_centers(pts);
    const auto hits = exec == kernels::Exec::serial ? kernels::gap_scan_serial(pts, centers, floors)
                                                    : kernels::gap_scan_omp(pts, centers, floors);
    std::vector<ProfileEntry> out;
    for (std::size_t i = 0; i < floors.size(); ++i) out.push_back({floors[i], to_result(hits[i])});
    return out;
}

std::optional<SeparatingAnnulus> max_separating_modulus(const PointCloud& cloud, double scale_floor,
                                                        kernels::Exec exec) {
    if (!(scale_floor > 0.0)) throw InputError("max_separating_modulus: scale_floor must be positive");
    const double floors[] = {scale_floor};
    return perfectness_profile(cloud, floors, exec).front().best;
}

std::optional<SeparatingAnnulus> max_separating_modulus_inverted(const PointCloud& cloud, double scale_floor) {
    PointCloud inv;
    inv.method_tag = cloud.method_tag + "/inverted";
    for (const auto& p : cloud.points) {
        if (p.is_infinite())
            inv.points.emplace_back(0.0);
        else if (p.value() == cplx{})
            inv.points.push_back(SpherePoint::infinity());
        else
            inv.points.emplace_back(1.0 / p.value());
    }
    return max_separating_modulus(inv, scale_floor);
}

}  // namespace rsg
