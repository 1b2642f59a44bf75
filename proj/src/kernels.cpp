#include "rsg/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "rsg/rational.hpp"

namespace rsg::kernels {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using Point3 = bg::model::point<double, 3, bg::cs::cartesian>;
using Indexed = std::pair<Point3, std::size_t>;

Point3 lift(const SpherePoint& p) {
    const auto x = p.to_r3();
    return {x[0], x[1], x[2]};
}

// Below this many pair evaluations the brute force beats building an index.
constexpr std::size_t kIndexThreshold = 1u << 20;

}  // namespace

double directed_hausdorff_serial(std::span<const SpherePoint> a, std::span<const SpherePoint> b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& q : b) nearest = std::min(nearest, chordal_dist(p, q));
        worst = std::max(worst, nearest);
    }
    return worst;
}

double directed_hausdorff_omp(std::span<const SpherePoint> a, std::span<const SpherePoint> b) {
    std::vector<double> nearest(a.size());
    const long long n = static_cast<long long>(a.size());
    if (a.size() * b.size() <= kIndexThreshold) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : b) best = std::min(best, chordal_dist(a[static_cast<std::size_t>(i)], q));
            nearest[static_cast<std::size_t>(i)] = best;
        }
    } else {
        std::vector<Indexed> values;
        values.reserve(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) values.emplace_back(lift(b[j]), j);
        const bgi::rtree<Indexed, bgi::rstar<16>> tree(values.begin(), values.end());
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            const auto& p = a[static_cast<std::size_t>(i)];
            std::vector<Indexed> hit;
            tree.query(bgi::nearest(lift(p), 1), std::back_inserter(hit));
            nearest[static_cast<std::size_t>(i)] = chordal_dist(p, b[hit.front().second]);
        }
    }
    double worst = 0.0;
    for (double d : nearest) worst = std::max(worst, d);
    return worst;
}

double diameter_serial(std::span<const SpherePoint> pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, chordal_dist(pts[i], pts[j]));
    return best;
}

double diameter_omp(std::span<const SpherePoint> pts) {
    std::vector<double> row(pts.size());
    const long long n = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(dynamic, 32)
    for (long long i = 0; i < n; ++i) {
        double best = 0.0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pts.size(); ++j)
            best = std::max(best, chordal_dist(pts[static_cast<std::size_t>(i)], pts[j]));
        row[static_cast<std::size_t>(i)] = best;
    }
    double best = 0.0;
    for (double d : row) best = std::max(best, d);
    return best;
}

std::vector<double> derivative_sweep_serial(const RationalMap& f, std::span<const SpherePoint> samples) {
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = spherical_derivative(f, samples[i]);
    return out;
}

std::vector<double> derivative_sweep_omp(const RationalMap& f, std::span<const SpherePoint> samples) {
    std::vector<double> out(samples.size());
    const long long n = static_cast<long long>(samples.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = spherical_derivative(f, samples[static_cast<std::size_t>(i)]);
    return out;
}

bool gap_better(const GapHit& a, const GapHit& b) noexcept {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    if (a.center.imag() != b.center.imag()) return a.center.imag() < b.center.imag();
    return a.r1 < b.r1;
}

namespace {

void scan_center(std::span<const cplx> pts, cplx c, std::span<const double> floors,
                 std::vector<double>& dist, std::span<std::optional<GapHit>> best) {
    dist.resize(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) dist[k] = std::abs(pts[k] - c);
    std::sort(dist.begin(), dist.end());
    for (std::size_t f = 0; f < floors.size(); ++f) {
        for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
            const double r1 = std::max(dist[i], floors[f]);
            const double r2 = dist[i + 1];
            if (!(r2 > r1)) continue;
            const GapHit hit{r2 / r1, c, r1, r2};
            if (!best[f] || gap_better(hit, *best[f])) best[f] = hit;
        }
    }
}

}  // namespace

std::vector<std::optional<GapHit>> gap_scan_serial(std::span<const cplx> finite_points,
                                                   std::span<const cplx> centers,
                                                   std::span<const double> floors) {
    std::vector<std::optional<GapHit>> best(floors.size());
    std::vector<double> dist;
    for (const auto& c : centers) {
        std::vector<std::optional<GapHit>> local(floors.size());
        scan_center(finite_points, c, floors, dist, local);
        for (std::size_t f = 0; f < floors.size(); ++f)
            if (local[f] && (!best[f] || gap_better(*local[f], *best[f]))) best[f] = local[f];
    }
    return best;
}

std::vector<std::optional<GapHit>> gap_scan_omp(std::span<const cplx> finite_points,
                                                std::span<const cplx> centers,
                                                std::span<const double> floors) {
    const std::size_t nf = floors.size();
    std::vector<std::optional<GapHit>> per_center(centers.size() * nf);
    const long long n = static_cast<long long>(centers.size());
#pragma omp parallel
    {
        std::vector<double> dist;
#pragma omp for schedule(dynamic, 8)
        for (long long i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            scan_center(finite_points, centers[k], floors, dist,
                        std::span(per_center).subspan(k * nf, nf));
        }
    }
    std::vector<std::optional<GapHit>> best(nf);
    for (std::size_t k = 0; k < centers.size(); ++k)
        for (std::size_t f = 0; f < nf; ++f) {
            const auto& hit = per_center[k * nf + f];
            if (hit && (!best[f] || gap_better(*hit, *best[f]))) best[f] = hit;
        }
    return best;
}

}  // namespace rsg::kernels
