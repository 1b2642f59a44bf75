#pragma once

// Data-parallel kernels. Each kernel has a plain serial reference version and
// an OpenMP version; tests check that they agree and benchmarks compare them.
// Every parallel kernel produces the same result for any thread count: work
// items are independent and reductions are ordered.

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <vector>

#include "rsg/sphere.hpp"

namespace rsg {
class RationalMap;
}

namespace rsg::kernels {

enum class Exec { serial, parallel };

// Calls body(i) for every i in [0, n). In parallel mode exceptions are caught
// per index and the one from the smallest index is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// max over a of min over b of chordal distance.
double directed_hausdorff_serial(std::span<const SpherePoint> a, std::span<const SpherePoint> b);
double directed_hausdorff_omp(std::span<const SpherePoint> a, std::span<const SpherePoint> b);

double diameter_serial(std::span<const SpherePoint> pts);
double diameter_omp(std::span<const SpherePoint> pts);

// Spherical derivative of f at every sample.
std::vector<double> derivative_sweep_serial(const RationalMap& f, std::span<const SpherePoint> samples);
std::vector<double> derivative_sweep_omp(const RationalMap& f, std::span<const SpherePoint> samples);

// Best radial gap around the given centres, one result per floor.
// For a centre c with sorted distances d_0 <= d_1 <= ... to the finite cloud
// points, every consecutive pair gives Ann(c; max(d_i, floor), d_{i+1}) when
// d_{i+1} > max(d_i, floor). The winner maximises r2/r1; ties go to the
// lexicographically smallest centre, then the smallest r1.
struct GapHit {
    double ratio = 0.0;
    cplx center{};
    double r1 = 0.0;
    double r2 = 0.0;
};

std::vector<std::optional<GapHit>> gap_scan_serial(std::span<const cplx> finite_points,
                                                   std::span<const cplx> centers,
                                                   std::span<const double> floors);
std::vector<std::optional<GapHit>> gap_scan_omp(std::span<const cplx> finite_points,
                                                std::span<const cplx> centers,
                                                std::span<const double> floors);

// True if `a` beats `b` under the gap-scan ordering.
bool gap_better(const GapHit& a, const GapHit& b) noexcept;

}  // namespace rsg::kernels
