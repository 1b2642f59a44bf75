#include "rsg/rational.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rsg/error.hpp"
#include "rsg/kernels.hpp"

namespace rsg {

// ---------------------------------------------------------------- Möbius

namespace {

// x1*y1 + x2*y2 + x3*y3 + x4*y4 with error-free products and compensated sum.
double dot4(const double (&x)[4], const double (&y)[4]) {
    double s = 0.0, err = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double p = x[k] * y[k];
        err += std::fma(x[k], y[k], -p);
        const double t = s + p;
        err += std::abs(s) >= std::abs(p) ? (s - t) + p : (p - t) + s;
        s = t;
    }
    return s + err;
}

// ad - bc without the cancellation of the naive formula.
cplx accurate_det(cplx a, cplx b, cplx c, cplx d) {
    const double re = dot4({a.real(), -a.imag(), -b.real(), b.imag()}, {d.real(), d.imag(), c.real(), c.imag()});
    const double im = dot4({a.real(), a.imag(), -b.real(), -b.imag()}, {d.imag(), d.real(), c.imag(), c.real()});
    return {re, im};
}

}  // namespace

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {
    double scale = 0.0;
    for (const auto& x : m_) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw InputError("MoebiusMap: non-finite coefficient");
        scale = std::max(scale, std::abs(x));
    }
    const cplx det = accurate_det(a, b, c, d);
    if (scale == 0.0 || std::abs(det) <= 1e-200 * scale * scale)
        throw InputError("MoebiusMap: ad - bc must be nonzero");
    // already unimodular (e.g. read back from a file): rescaling would only
    // perturb the last bit
    if (std::abs(det - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon()) return;
    const cplx s = std::sqrt(det);
    for (auto& x : m_) x /= s;
}

SpherePoint MoebiusMap::operator()(const SpherePoint& p) const noexcept {
    const auto [a, b, c, d] = m_;
    if (p.is_infinite()) {
        if (c == cplx{}) return SpherePoint::infinity();
        return a / c;
    }
    const cplx z = p.value();
    const cplx den = c * z + d;
    if (den == cplx{}) return SpherePoint::infinity();
    const cplx w = (a * z + b) / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return SpherePoint::infinity();
    return w;
}

MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g) {
    return {{f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(), f.c() * g.a() + f.d() * g.c(),
             f.c() * g.b() + f.d() * g.d()},
            MoebiusMap::Normalized{}};
}

bool MoebiusMap::approx_equal(const MoebiusMap& o, double tol) const noexcept {
    double scale = 1.0;
    for (int k = 0; k < 4; ++k) scale = std::max({scale, std::abs(m_[k]), std::abs(o.m_[k])});
    auto same = [&](double sign) {
        for (int k = 0; k < 4; ++k)
            if (std::abs(m_[k] - sign * o.m_[k]) > tol * scale) return false;
        return true;
    };
    return same(1.0) || same(-1.0);
}

double MoebiusMap::operator_norm_squared() const noexcept {
    double fro = 0.0;
    for (const auto& x : m_) fro += std::norm(x);
    // singular values s, 1/s:  s^2 + s^-2 = fro
    return 0.5 * (fro + std::sqrt(std::max(0.0, fro * fro - 4.0)));
}

MoebiusMap inverse(const MoebiusMap& m) { return {{m.d(), -m.b(), -m.c(), m.a()}, MoebiusMap::Normalized{}}; }

bool is_loxodromic(const MoebiusMap& m) {
    if (m.is_identity()) throw InputError("is_loxodromic: identity map has no type");
    const cplx t2 = m.trace() * m.trace();
    constexpr double tol = 1e-12;
    const bool real = std::abs(t2.imag()) <= tol * std::max(1.0, std::abs(t2));
    return !(real && t2.real() >= -tol && t2.real() <= 4.0 + tol);
}

// ---------------------------------------------------------------- rational

namespace {

double min_root_gap(const Polynomial& a, const Polynomial& b) {
    const auto ra = flatten(poly_roots(a));
    const auto rb = flatten(poly_roots(b));
    double gap = std::numeric_limits<double>::infinity();
    for (auto x : ra)
        for (auto y : rb) gap = std::min(gap, std::abs(x - y));
    return gap;
}

std::vector<cplx> padded(const Polynomial& p, int d) {
    std::vector<cplx> v(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= p.degree(); ++k) v[static_cast<std::size_t>(k)] = p[k];
    return v;
}

struct HornerD {
    cplx v, dv;
};

HornerD horner_d(const std::vector<cplx>& c, cplx z) {
    cplx v{}, dv{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dv = dv * z + v;
        v = v * z + *it;
    }
    return {v, dv};
}

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx v{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den, Unchecked)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InputError("RationalMap: zero denominator");
    if (num_.is_zero()) throw InputError("RationalMap: constant map (zero numerator)");
    degree_ = std::max(num_.degree(), den_.degree());
    if (degree_ < 1) throw InputError("RationalMap: constant map");
    build_charts();
}

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : RationalMap(std::move(num), std::move(den), Unchecked{}) {
    if (num_.degree() >= 1 && den_.degree() >= 1 && min_root_gap(num_, den_) <= 1e-9)
        throw InputError("RationalMap: numerator and denominator share a root");
}

RationalMap::RationalMap(const MoebiusMap& m)
    : RationalMap(Polynomial{m.b(), m.a()}, Polynomial{m.d(), m.c()}, Unchecked{}) {
    moebius_ = m;
}

RationalMap RationalMap::unchecked(Polynomial num, Polynomial den) {
    return RationalMap(std::move(num), std::move(den), Unchecked{});
}

void RationalMap::build_charts() {
    charts_.p = padded(num_, degree_);
    charts_.q = padded(den_, degree_);
    charts_.pr.assign(charts_.p.rbegin(), charts_.p.rend());
    charts_.qr.assign(charts_.q.rbegin(), charts_.q.rend());
}

std::optional<MoebiusMap> RationalMap::moebius() const {
    if (degree_ != 1) return std::nullopt;
    if (moebius_) return moebius_;
    return MoebiusMap(num_[1], num_[0], den_[1], den_[0]);
}

SpherePoint RationalMap::operator()(const SpherePoint& p) const {
    cplx P, Q;
    if (p.is_finite() && std::abs(p.value()) <= 1.0) {
        P = horner(charts_.p, p.value());
        Q = horner(charts_.q, p.value());
    } else {
        const cplx w = p.inverted();
        P = horner(charts_.pr, w);
        Q = horner(charts_.qr, w);
    }
    if (Q == cplx{}) return SpherePoint::infinity();
    const cplx v = P / Q;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
    return v;
}

cplx RationalMap::derivative(cplx z) const {
    const auto [P, dP] = horner_d(charts_.p, z);
    const auto [Q, dQ] = horner_d(charts_.q, z);
    return (dP * Q - P * dQ) / (Q * Q);
}

SpherePoint eval(const RationalMap& f, const SpherePoint& p) { return f(p); }

double spherical_derivative(const RationalMap& f, const SpherePoint& p) {
    const auto& ch = f.charts();
    const bool near = p.is_finite() && std::abs(p.value()) <= 1.0;
    const cplx u = near ? p.value() : p.inverted();
    const auto [P, dP] = horner_d(near ? ch.p : ch.pr, u);
    const auto [Q, dQ] = horner_d(near ? ch.q : ch.qr, u);
    return std::abs(dP * Q - P * dQ) * (1.0 + std::norm(u)) / (std::norm(P) + std::norm(Q));
}

bool approx_equal(const RationalMap& f, const RationalMap& g, double tol) {
    const Polynomial x = f.num() * g.den();
    const Polynomial y = g.num() * f.den();
    double scale = 0.0, diff = 0.0;
    const int n = std::max(x.degree(), y.degree());
    for (int k = 0; k <= n; ++k) {
        scale = std::max({scale, std::abs(x[k]), std::abs(y[k])});
        diff = std::max(diff, std::abs(x[k] - y[k]));
    }
    return diff <= tol * scale;
}

RationalMap compose(const RationalMap& f, const RationalMap& g, int degree_cap) {
    const long deg = static_cast<long>(f.degree()) * g.degree();
    if (deg > degree_cap) throw DegreeCapError(deg, degree_cap);
    if (f.degree() == 1 && g.degree() == 1) return RationalMap(*f.moebius() * *g.moebius());

    // f = P/Q homogeneous of degree df:  f(A/B) = sum p_k A^k B^(df-k) / sum q_k A^k B^(df-k)
    const int df = f.degree();
    const auto& p = f.charts().p;
    const auto& q = f.charts().q;
    std::vector<Polynomial> apow(static_cast<std::size_t>(df) + 1), bpow(static_cast<std::size_t>(df) + 1);
    apow[0] = bpow[0] = Polynomial{1.0};
    for (int k = 1; k <= df; ++k) {
        apow[static_cast<std::size_t>(k)] = apow[static_cast<std::size_t>(k) - 1] * g.num();
        bpow[static_cast<std::size_t>(k)] = bpow[static_cast<std::size_t>(k) - 1] * g.den();
    }
    Polynomial num, den;
    for (int k = 0; k <= df; ++k) {
        const Polynomial term = apow[static_cast<std::size_t>(k)] * bpow[static_cast<std::size_t>(df - k)];
        if (p[static_cast<std::size_t>(k)] != cplx{}) num = num + p[static_cast<std::size_t>(k)] * term;
        if (q[static_cast<std::size_t>(k)] != cplx{}) den = den + q[static_cast<std::size_t>(k)] * term;
    }
    return RationalMap::unchecked(std::move(num), std::move(den));
}

// ---------------------------------------------------------------- fixed points

FixedPointClass classify_multiplier(cplx multiplier) noexcept {
    const double r = std::abs(multiplier);
    if (r <= kMultiplierTolerance) return FixedPointClass::superattracting;
    if (r < 1.0 - kMultiplierTolerance) return FixedPointClass::attracting;
    if (r <= 1.0 + kMultiplierTolerance) return FixedPointClass::indifferent;
    return FixedPointClass::repelling;
}

const char* to_string(FixedPointClass c) noexcept {
    switch (c) {
        case FixedPointClass::superattracting: return "superattracting";
        case FixedPointClass::attracting: return "attracting";
        case FixedPointClass::indifferent: return "indifferent";
        case FixedPointClass::repelling: return "repelling";
    }
    return "?";
}

namespace {

FixedPointRecord make_fixed(const SpherePoint& z, cplx lam, int mult = 1) {
    return {z, lam, classify_multiplier(lam), mult};
}

// Roots of c z^2 + (d - a) z - b = 0, plus infinity when c = 0. With
// ad - bc = 1 the multiplier at a finite fixed point is 1/(c z + d)^2.
std::vector<FixedPointRecord> moebius_fixed_points(const MoebiusMap& m) {
    if (m.is_identity(1e-14)) return {};
    const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    const cplx one{1.0, 0.0};
    if (c == cplx{}) {
        // affine: z -> (a z + b)/d, multiplier a/d = a^2 at the finite point
        if (std::abs(d - a) <= 1e-12 * scale) return {make_fixed(SpherePoint::infinity(), one, 2)};
        const cplx lam = a * a;
        return {make_fixed(b / (d - a), lam), make_fixed(SpherePoint::infinity(), 1.0 / lam)};
    }
    const cplx p = d - a;
    const cplx sq = std::sqrt(p * p + 4.0 * b * c);
    auto mult_at = [&](cplx z) {
        const cplx w = c * z + d;
        return 1.0 / (w * w);
    };
    auto point = [](cplx z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag()) ? SpherePoint(z) : SpherePoint::infinity();
    };
    if (std::abs(sq) <= 1e-12 * scale) return {make_fixed(point(-p / (2.0 * c)), one, 2)};
    // q = -(p + sign * sq)/2 with the sign that avoids cancellation
    const cplx q = -0.5 * (std::real(std::conj(p) * sq) >= 0.0 ? p + sq : p - sq);
    const cplx z1 = q / c;
    const cplx z2 = -b / q;
    // multipliers are reciprocal; take the larger denominator for accuracy
    cplx l1 = mult_at(z1), l2 = mult_at(z2);
    if (std::abs(c * z1 + d) >= std::abs(c * z2 + d)) l2 = 1.0 / l1;
    else l1 = 1.0 / l2;
    return {make_fixed(point(z1), l1), make_fixed(point(z2), l2)};
}

}  // namespace

std::vector<FixedPointRecord> fixed_points(const RationalMap& f) {
    if (auto m = f.moebius()) return moebius_fixed_points(*m);

    const Polynomial z{0.0, 1.0};
    const Polynomial g = f.num() - z * f.den();
    std::vector<FixedPointRecord> out;
    for (const auto& r : poly_roots(g)) {
        const cplx lam = f.derivative(r.value);
        out.push_back({r.value, lam, classify_multiplier(lam), r.multiplicity});
    }
    const int dn = f.num().degree(), dd = f.den().degree();
    if (dn > dd) {
        const int mult = f.degree() + 1 - g.degree();
        // F(w) = 1/f(1/w); F'(0) = q_{d-1} / p_d when deg num = deg den + 1.
        const cplx lam = (dn - dd >= 2) ? cplx{} : f.den().leading() / f.num().leading();
        out.push_back({SpherePoint::infinity(), lam, classify_multiplier(lam), mult});
    }
    return out;
}

std::vector<SpherePoint> preimages(const RationalMap& f, const SpherePoint& w) {
    if (auto m = f.moebius()) return {inverse(*m)(w)};
    const Polynomial g = w.is_infinite() ? f.den() : f.num() - w.value() * f.den();
    std::vector<SpherePoint> out;
    if (g.degree() >= 1)
        for (const auto& r : poly_roots(g))
            out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), SpherePoint(r.value));
    out.insert(out.end(), static_cast<std::size_t>(f.degree() - std::max(g.degree(), 0)),
               SpherePoint::infinity());
    return out;
}

std::vector<SpherePoint> exceptional_points(const RationalMap& f) {
    if (auto m = f.moebius()) {
        if (!is_loxodromic(*m))
            throw InputError("exceptional_points: defined only for loxodromic Möbius maps");
        for (const auto& r : moebius_fixed_points(*m))
            if (r.kind == FixedPointClass::attracting || r.kind == FixedPointClass::superattracting)
                return {r.location};
        throw NumericalError("exceptional_points: loxodromic map without attracting fixed point", 0.0);
    }
    constexpr double kCluster = 1e-9;
    const int d = f.degree();
    std::vector<SpherePoint> candidates;
    for (const auto& r : fixed_points(f)) candidates.push_back(r.location);
    for (const auto& r : fixed_points(compose(f, f, d * d))) candidates.push_back(r.location);
    candidates = dedupe(candidates, kCluster);

    std::vector<SpherePoint> out;
    for (const auto& c : candidates) {
        std::vector<SpherePoint> seen{c}, frontier{c};
        for (int depth = 0; depth < 3 && seen.size() <= 2; ++depth) {
            std::vector<SpherePoint> next;
            for (const auto& p : frontier) {
                auto pre = preimages(f, p);
                next.insert(next.end(), pre.begin(), pre.end());
            }
            seen.insert(seen.end(), next.begin(), next.end());
            seen = dedupe(seen, kCluster);
            frontier = dedupe(next, kCluster);
        }
        if (seen.size() <= 2) out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------- Lipschitz

std::vector<SpherePoint> sphere_samples(std::size_t n) {
    std::vector<SpherePoint> out;
    out.reserve(n + 2);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
        const double th = golden * static_cast<double>(i);
        const cplx xy = std::polar(r, th);
        if (t <= 0.0)
            out.emplace_back(xy / (1.0 - t));
        else
            out.emplace_back(1.0 / (std::conj(xy) / (1.0 + t)));
    }
    out.emplace_back(0.0);
    out.push_back(SpherePoint::infinity());
    return out;
}

namespace {

struct ChartPoint {
    cplx u;
    bool inverted;  // u is the w = 1/z coordinate

    SpherePoint point() const {
        if (!inverted) return u;
        if (u == cplx{}) return SpherePoint::infinity();
        return 1.0 / u;
    }
};

// Maximise g on [lo, hi] by golden-section search.
template <class G>
std::pair<double, double> golden_max(G&& g, double lo, double hi, double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    while (hi - lo > xtol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = g(x2);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double refine_max(const RationalMap& f, ChartPoint start, double tol) {
    auto h = [&](cplx u) { return spherical_derivative(f, ChartPoint{u, start.inverted}.point()); };
    cplx u = start.u;
    double best = h(u);
    double step = 0.02;
    for (int sweep = 0; sweep < 200; ++sweep) {
        const double before = best;
        double moved = 0.0;
        for (int axis = 0; axis < 2; ++axis) {
            const cplx dir = axis == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
            const double xtol = 1e-13 * std::max(1.0, std::abs(u));
            auto [t, v] = golden_max([&](double s) { return h(u + s * dir); }, -step, step, xtol);
            if (v > best) {
                best = v;
                u += t * dir;
                moved = std::max(moved, std::abs(t));
            }
        }
        if (moved < 0.5 * step) step = std::max(0.5 * step, 1e-10);
        if (sweep > 0 && best - before <= tol * best && step <= 1e-6) break;
    }
    return best;
}

}  // namespace

namespace {

// Where a Möbius map stretches most: z = v1/v2 for the right singular vector
// v of the smaller singular value. Peaks of steep maps are far narrower than
// the sample spacing, so this point seeds the search directly.
SpherePoint moebius_peak(const MoebiusMap& m) {
    const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double p = std::norm(a) + std::norm(c), s = std::norm(b) + std::norm(d);
    const cplx q = std::conj(a) * b + std::conj(c) * d;
    const double lam = 0.5 * (p + s) - std::hypot(0.5 * (p - s), std::abs(q));
    cplx v1 = q, v2 = lam - p;
    const cplx w1 = lam - s, w2 = std::conj(q);
    if (std::norm(w1) + std::norm(w2) > std::norm(v1) + std::norm(v2)) {
        v1 = w1;
        v2 = w2;
    }
    if (v1 == cplx{} && v2 == cplx{}) return SpherePoint(0.0);  // isometry: every point is a peak
    if (std::abs(v2) < std::abs(v1) * 1e-300) return SpherePoint::infinity();
    return SpherePoint(v1 / v2);
}

}  // namespace

double lipschitz_constant(const RationalMap& f, const LipschitzOptions& opt) {
    if (!(opt.tol > 0.0)) throw InputError("lipschitz_constant: tol must be positive");
    const auto samples = sphere_samples(opt.samples);
    const auto values = kernels::derivative_sweep_omp(f, samples);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t k = std::min(opt.candidates, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(),
                      [&](std::size_t i, std::size_t j) {
                          return values[i] != values[j] ? values[i] > values[j] : i < j;
                      });

    std::vector<double> refined(k);
    kernels::for_each_index(k, kernels::Exec::parallel, [&](std::size_t c) {
        const SpherePoint& p = samples[order[c]];
        const bool near = p.is_finite() && std::abs(p.value()) <= 1.0;
        refined[c] = refine_max(f, ChartPoint{near ? p.value() : p.inverted(), !near}, opt.tol);
    });
    double best = values[order[0]];
    for (double v : refined) best = std::max(best, v);
    if (auto m = f.moebius()) {
        const SpherePoint p = moebius_peak(*m);
        const bool near = p.is_finite() && std::abs(p.value()) <= 1.0;
        best = std::max({best, spherical_derivative(f, p),
                         refine_max(f, ChartPoint{near ? p.value() : p.inverted(), !near}, opt.tol)});
    }
    return best;
}

}  // namespace rsg
