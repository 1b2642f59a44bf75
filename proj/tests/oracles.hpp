#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical kernels; the oracles use direct formulas, dense grids
// and brute force.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Chordal distance through the stereographic lift; nullopt means infinity.
inline std::array<double, 3> lift(std::optional<cplx> z) {
    if (!z) return {0.0, 0.0, 1.0};
    const double n = std::norm(*z);
    return {2.0 * z->real() / (1.0 + n), 2.0 * z->imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
}

inline double chordal(std::optional<cplx> z, std::optional<cplx> w) {
    const auto a = lift(z), b = lift(w);
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

// Coefficients in ascending powers.
using Coeffs = std::vector<cplx>;

inline cplx horner(const Coeffs& c, cplx z) {
    cplx s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
    return s;
}

inline Coeffs deriv(const Coeffs& c) {
    Coeffs d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

// |f'|(1+|z|^2)/(1+|f|^2) at a finite z, switching to 1/f near poles.
inline double sph_deriv(const Coeffs& num, const Coeffs& den, cplx z) {
    const cplx p = horner(num, z), q = horner(den, z);
    const cplx dp = horner(deriv(num), z), dq = horner(deriv(den), z);
    const cplx wr = dp * q - p * dq;  // f' = wr / q^2, (1/f)' = -wr / p^2
    return std::abs(wr) * (1.0 + std::norm(z)) / (std::norm(p) + std::norm(q));
}

// Maximize g over t in [0, inf] on a dense grid in theta = atan(t), then
// golden section around the best cell.
inline double max_radial(const std::function<double(double)>& g, int grid = 200000) {
    const double top = std::numbers::pi / 2.0;
    auto h = [&](double th) { return th >= top ? g(1e300) : g(std::tan(th)); };
    double best = -kInf, arg = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double th = top * i / grid;
        const double v = h(th);
        if (v > best) best = v, arg = th;
    }
    double lo = std::max(0.0, arg - top / grid), hi = std::min(top, arg + top / grid);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        if (h(x1) < h(x2)) lo = x1;
        else hi = x2;
    }
    return std::max(best, h(0.5 * (lo + hi)));
}

// Radial spherical derivatives: f#(z) depends on t = |z| only.
inline double radial_power(int k, double t) {
    if (t > 1.0) return radial_power(k, 1.0 / t);  // symmetric under t -> 1/t
    return k * std::pow(t, k - 1) * (1.0 + t * t) / (1.0 + std::pow(t, 2 * k));
}
inline double radial_scale(double lam, double t) {
    if (t > 1e150) return 1.0 / lam;
    return lam * (1.0 + t * t) / (1.0 + lam * lam * t * t);
}

// sup f# by a polar grid on |z| <= 1 and on |w| <= 1 (z = 1/w), followed by
// compass pattern search from the best grid cells.
inline double lip_2d(const Coeffs& num, const Coeffs& den, int nr = 300, int nt = 600) {
    auto value = [&](cplx u, bool inv) {
        if (!inv) return sph_deriv(num, den, u);
        if (std::abs(u) < 1e-300) u = 1e-300;  // f# is continuous at infinity
        return sph_deriv(num, den, 1.0 / u);
    };
    struct Cand {
        double v;
        cplx u;
        bool inv;
    };
    std::vector<Cand> cands;
    for (int chart = 0; chart < 2; ++chart)
        for (int i = 0; i <= nr; ++i)
            for (int j = 0; j < nt; ++j) {
                const cplx u = std::polar(static_cast<double>(i) / nr, 2.0 * std::numbers::pi * j / nt);
                cands.push_back({value(u, chart == 1), u, chart == 1});
            }
    std::partial_sort(cands.begin(), cands.begin() + 40, cands.end(),
                      [](const Cand& a, const Cand& b) { return a.v > b.v; });
    double best = cands.front().v;
    for (int c = 0; c < 40; ++c) {
        cplx u = cands[c].u;
        double v = cands[c].v, h = 1.0 / nr;
        while (h > 1e-13) {
            bool moved = false;
            for (cplx d : {cplx(h, 0), cplx(-h, 0), cplx(0, h), cplx(0, -h)}) {
                const cplx w = u + d;
                if (std::abs(w) > 1.0 + 1e-12) continue;
                const double vw = value(w, cands[c].inv);
                if (vw > v) v = vw, u = w, moved = true;
            }
            if (!moved) h *= 0.5;
        }
        best = std::max(best, v);
    }
    return best;
}

// sup f# of a Möbius map = squared largest singular value after det scaling.
inline double moebius_lip(cplx a, cplx b, cplx c, cplx d) {
    const double det = std::abs(a * d - b * c);
    const double fro = (std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d)) / det;
    return 0.5 * (fro + std::sqrt(fro * fro - 4.0));
}

// Distance from real x to the middle-third Cantor set.
inline double cantor_distance(double x, int depth = 60) {
    if (x <= 0.0) return -x;
    if (x >= 1.0) return x - 1.0;
    double lo = 0.0, len = 1.0;
    for (int k = 0; k < depth; ++k) {
        const double third = len / 3.0;
        if (x <= lo + third) {
            len = third;
        } else if (x >= lo + 2.0 * third) {
            lo += 2.0 * third;
            len = third;
        } else {
            return std::min(x - (lo + third), lo + 2.0 * third - x);
        }
    }
    return 0.0;
}

// Sorted endpoints of the level-n middle-third intervals, via base-3 digits.
inline std::vector<double> cantor_endpoints(int level) {
    std::vector<double> out;
    const long count = 1L << level;
    const double scale = std::pow(3.0, level);
    for (long m = 0; m < count; ++m) {
        double x = 0.0;  // 3^level times the left endpoint; digits 0/2 read from m
        for (int k = 0; k < level; ++k)
            if ((m >> (level - 1 - k)) & 1) x += 2.0 * std::pow(3.0, level - 1 - k);
        out.push_back(x / scale);
        out.push_back((x + 1.0) / scale);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Images of 0 under every length-n word of the affine contractions
// z -> a_k z + b_k. Each piece of the attractor lies within diam(A)*|a|^n of
// its image of 0.
inline std::vector<cplx> ifs_word_images(const std::vector<std::pair<cplx, cplx>>& maps, int level) {
    std::vector<cplx> pts{0.0};
    for (int k = 0; k < level; ++k) {
        std::vector<cplx> next;
        for (cplx z : pts)
            for (const auto& [a, b] : maps) next.push_back(a * z + b);
        pts = std::move(next);
    }
    return pts;
}

// Brute-force directed Hausdorff distance in the chordal metric.
inline double directed_hausdorff(const std::vector<std::optional<cplx>>& a, const std::vector<std::optional<cplx>>& b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double m = kInf;
        for (const auto& q : b) m = std::min(m, chordal(p, q));
        worst = std::max(worst, m);
    }
    return worst;
}

struct Annulus {
    double ratio;
    cplx center;
    double r1, r2;
};

// Exhaustive thickest separating round annulus: centres are all points and
// all pairwise midpoints. For each centre the inner radius runs over the
// floor and every distinct distance above it; the outer radius is the next
// larger distance, found by binary search. Same ordering as the library:
// larger ratio, then lexicographically smaller centre, then smaller r1.
inline std::optional<Annulus> brute_force_annulus(const std::vector<cplx>& pts, double floor) {
    std::vector<cplx> centers(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) centers.push_back(0.5 * (pts[i] + pts[j]));
    std::optional<Annulus> best;
    auto better = [](const Annulus& a, const Annulus& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        if (a.center.imag() != b.center.imag()) return a.center.imag() < b.center.imag();
        return a.r1 < b.r1;
    };
    std::vector<double> d;
    for (const cplx c : centers) {
        d.clear();
        for (cplx p : pts) d.push_back(std::abs(p - c));
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        std::vector<double> inner_radii{floor};
        for (double x : d)
            if (x > floor) inner_radii.push_back(x);
        for (double r1 : inner_radii) {
            if (d.front() > r1) continue;  // empty inner disk
            auto it = std::upper_bound(d.begin(), d.end(), r1);
            if (it == d.end()) continue;  // empty outer region
            const Annulus cand{*it / r1, c, r1, *it};
            if (!best || better(cand, *best)) best = cand;
        }
    }
    return best;
}

// Random test clouds of mixed shapes.
inline std::vector<cplx> random_cloud(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> pts;
    switch (seed % 4) {
        case 0:  // uniform square
            for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
            break;
        case 1:  // clusters at several scales
            for (std::size_t i = 0; i < n; ++i) {
                const double s = std::pow(10.0, -static_cast<double>(i % 4));
                pts.emplace_back(0.3 * (i % 3) + s * u(rng), s * u(rng));
            }
            break;
        case 2:  // noisy circle
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(std::polar(1.0 + 0.05 * u(rng), std::numbers::pi * u(rng)));
            break;
        default:  // dyadic grid points, with exact ties
            for (std::size_t i = 0; i < n; ++i)
                pts.emplace_back(std::ldexp(std::floor(8.0 * u(rng)), -3), std::ldexp(std::floor(8.0 * u(rng)), -3));
            std::sort(pts.begin(), pts.end(),
                      [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            break;
    }
    return pts;
}

}  // namespace oracle
