#include "rsg/polynomial.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rsg/error.hpp"

namespace rsg {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    for (const auto& a : c_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InputError("Polynomial: non-finite coefficient");
    while (!c_.empty() && c_.back() == cplx(0.0, 0.0)) c_.pop_back();
}

Polynomial Polynomial::monomial(int degree, cplx c) {
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

cplx Polynomial::operator()(cplx z) const noexcept {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

double Polynomial::abs_eval(double r) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[static_cast<int>(k)] - b[static_cast<int>(k)];
    return Polynomial(std::move(r));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(cplx s, const Polynomial& a) {
    std::vector<cplx> r(a.c_);
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
}

namespace {

struct Newton {
    cplx ratio;       // p(z) / p'(z)
    double backward;  // |p(z)| / sum |a_k| |z|^k
};

// p/p' and the relative backward error, evaluated in the reversed
// polynomial when |z| > 1 so high degrees do not overflow.
Newton newton_ratio(const std::vector<cplx>& a, cplx z) {
    const int n = static_cast<int>(a.size()) - 1;
    if (std::abs(z) <= 1.0) {
        cplx p = a[n], dp{};
        double s = std::abs(a[n]);
        const double r = std::abs(z);
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + a[k];
            s = s * r + std::abs(a[k]);
        }
        return {p / dp, std::abs(p) / s};
    }
    const cplx w = 1.0 / z;
    const double r = std::abs(w);
    cplx q = a[0], dq{};
    double s = std::abs(a[0]);
    for (int k = 1; k <= n; ++k) {
        dq = dq * w + q;
        q = q * w + a[k];
        s = s * r + std::abs(a[k]);
    }
    return {z * q / (static_cast<double>(n) * q - w * dq), std::abs(q) / s};
}

// Starting points on circles read off the upper convex hull of
// (k, log|a_k|), one circle per hull edge.
std::vector<cplx> initial_guesses(const std::vector<cplx>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<int> hull;
    auto lg = [&](int k) {
        return a[k] == cplx{} ? -std::numeric_limits<double>::infinity() : std::log(std::abs(a[k]));
    };
    for (int k = 0; k <= n; ++k) {
        if (a[k] == cplx{}) continue;
        while (hull.size() >= 2) {
            const int i = hull[hull.size() - 2], j = hull.back();
            // drop j if it lies on or below segment i-k
            if ((lg(j) - lg(i)) * (k - i) <= (lg(k) - lg(i)) * (j - i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<cplx> z;
    z.reserve(n);
    constexpr double sigma = 0.7;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const int i = hull[e], j = hull[e + 1];
        const int m = j - i;
        const double u = std::exp((lg(i) - lg(j)) / m);
        for (int t = 0; t < m; ++t) {
            const double th = two_pi * t / m + two_pi * e / n + sigma;
            z.push_back(std::polar(u, th));
        }
    }
    return z;
}

std::vector<cplx> aberth(const std::vector<cplx>& a, double& worst) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<cplx> z = initial_guesses(a);
    std::vector<char> done(n, 0);
    const double stop = 4.0 * DBL_EPSILON * n;
    constexpr int kMaxIter = 1000;
    for (int it = 0; it < kMaxIter; ++it) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            const Newton nt = newton_ratio(a, z[i]);
            if (nt.backward <= stop) {
                done[i] = 1;
                continue;
            }
            all_done = false;
            cplx sum{};
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            cplx corr = nt.ratio / (1.0 - nt.ratio * sum);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()))
                corr = nt.ratio;
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()))
                corr = cplx(1e-3, 1e-3) * std::max(1.0, std::abs(z[i]));
            z[i] -= corr;
            if (std::abs(corr) <= DBL_EPSILON * std::abs(z[i])) done[i] = 1;
        }
        if (all_done) break;
    }
    worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, newton_ratio(a, z[i]).backward);
    return z;
}

std::vector<cplx> quadratic(cplx a, cplx b, cplx c) {
    const cplx s = std::sqrt(b * b - 4.0 * a * c);
    const cplx t = (std::real(std::conj(b) * s) >= 0.0) ? -0.5 * (b + s) : -0.5 * (b - s);
    if (t == cplx{}) return {cplx{}, cplx{}};
    return {t / a, c / t};
}

bool close(cplx x, cplx y) {
    return std::abs(x - y) <= kRootMergeDistance * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

std::vector<RootCluster> poly_roots(const Polynomial& p, double tol) {
    if (p.degree() < 1) throw InputError("poly_roots: degree must be at least 1");
    const auto& all = p.coeffs();
    std::size_t zeros = 0;
    while (all[zeros] == cplx{}) ++zeros;
    std::vector<cplx> a(all.begin() + static_cast<long>(zeros), all.end());
    const int n = static_cast<int>(a.size()) - 1;

    std::vector<cplx> raw;
    double worst = 0.0;
    if (n == 1) {
        raw = {-a[0] / a[1]};
    } else if (n == 2) {
        raw = quadratic(a[2], a[1], a[0]);
        for (auto r : raw) worst = std::max(worst, newton_ratio(a, r).backward);
    } else if (n >= 3) {
        raw = aberth(a, worst);
    }

    // Single-linkage clustering of the converged roots.
    std::vector<int> parent(raw.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (close(raw[i], raw[j])) parent[find(static_cast<int>(j))] = find(static_cast<int>(i));

    std::vector<RootCluster> out;
    if (zeros > 0) out.push_back({cplx{}, static_cast<int>(zeros)});
    std::vector<int> slot(raw.size(), -1);
    std::vector<cplx> sums;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const int r = find(static_cast<int>(i));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back({cplx{}, 0});
            sums.emplace_back();
        }
        auto& cl = out[static_cast<std::size_t>(slot[r])];
        sums[static_cast<std::size_t>(slot[r]) - (zeros > 0 ? 1 : 0)] += raw[i];
        ++cl.multiplicity;
    }
    for (std::size_t k = (zeros > 0 ? 1 : 0); k < out.size(); ++k)
        out[k].value = sums[k - (zeros > 0 ? 1 : 0)] / static_cast<double>(out[k].multiplicity);

    for (const auto& cl : out) {
        if (cl.value == cplx{} && zeros > 0) continue;
        worst = std::max(worst, newton_ratio(a, cl.value).backward);
    }
    if (!(worst <= tol))
        throw NumericalError("poly_roots: root refinement did not converge", worst,
                             "degree " + std::to_string(p.degree()));
    return out;
}

std::vector<cplx> flatten(std::span<const RootCluster> roots) {
    std::vector<cplx> out;
    for (const auto& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
    return out;
}

}  // namespace rsg
