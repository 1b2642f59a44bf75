// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include <omp.h>

#include "oracles.hpp"
#include "rsg/cli.hpp"
#include "rsg/examples.hpp"
#include "rsg/perfectness.hpp"
#include "rsg/semigroup.hpp"

using namespace rsg;
using oracle::Coeffs;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool contains(const PointCloud& c, const SpherePoint& p, double tol) {
    for (const auto& q : c.points)
        if (chordal_dist(p, q) <= tol) return true;
    return false;
}

PointCloud from_reals(const std::vector<double>& xs) {
    PointCloud c;
    for (double x : xs) c.points.emplace_back(x);
    return c;
}

double sup_lip(const SemigroupSpec& s) {
    double m = 0.0;
    for (const auto& g : s.generators()) m = std::max(m, lipschitz_constant(g));
    return m;
}

const PointCloud& cantor_backward() {
    static const PointCloud c = backward_orbit_cloud(examples::cantor_spec().spec, 0.5, 50000, 30, 42).cloud;
    return c;
}

void criterion1() {
    omp_set_num_threads(1);
    const auto t0 = std::chrono::steady_clock::now();
    const PointCloud& cloud = cantor_backward();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double h = hausdorff_dist(cloud, from_reals(oracle::cantor_endpoints(8)));
    double contain = 0.0;
    for (const auto& p : cloud.points) contain = std::max(contain, oracle::cantor_distance(p.value().real()));
    report(1, h <= 0.02 && contain <= std::pow(3.0, -30) + std::pow(3.0, -8) && secs < 10.0,
           fmt("hausdorff %.3g (<= 0.02), containment %.3g, %.2f s single-threaded", h, contain, secs));
}

void criterion2() {
    const auto cloud = repelling_cloud(examples::cantor_spec().spec, 8).cloud;
    double worst = 0.0;
    for (const auto& p : cloud.points)
        worst = std::max(worst, p.is_finite() ? oracle::cantor_distance(p.value().real()) + std::abs(p.value().imag())
                                              : 1.0);
    bool has = true;
    for (double x : {0.0, 1.0, 0.25, 0.75}) has = has && contains(cloud, x, 1e-8);
    const double h = hausdorff_dist(cloud, cantor_backward());
    report(2, worst <= 1e-8 && has && h <= 0.05,
           fmt("%zu points, max distance to Cantor set %.3g, landmarks %s, cross-method hausdorff %.3g", cloud.size(),
               worst, has ? "present" : "missing", h));
}

void criterion3() {
    const double id = lipschitz_constant(MoebiusMap::identity());
    const double sq = lipschitz_constant(RationalMap::polynomial(Polynomial{0.0, 0.0, 1.0}));
    const double tr = lipschitz_constant(RationalMap::polynomial(Polynomial{0.0, 3.0}));
    const double sq_o = oracle::max_radial([](double t) { return oracle::radial_power(2, t); });
    const double tr_o = oracle::max_radial([](double t) { return oracle::radial_scale(3.0, t); });
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const MoebiusMap m({nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)});
        worst = std::max(worst, std::abs(lipschitz_constant(m) - lipschitz_constant(inverse(m))));
    }
    report(3,
           std::abs(id - 1.0) <= 1e-6 && std::abs(sq - sq_o) <= 1e-4 && std::abs(sq - 2.0) <= 1e-4 &&
               std::abs(tr - tr_o) <= 1e-4 && std::abs(tr - 3.0) <= 1e-4 && worst <= 1e-3,
           fmt("Lip(id) %.9f, Lip(z^2) %.9f (oracle %.9f), Lip(3z) %.9f (oracle %.9f), max |Lip m - Lip m^-1| %.3g", id,
               sq, sq_o, tr, tr_o, worst));
}

void criterion4() {
    const double pi = std::numbers::pi;
    const oracle::cplx r1 = std::polar(1.0, -pi / 3.0), r2 = std::polar(1.0, -2.0 * pi / 3.0);
    double cantor_o = 0.0, koch_o = 0.0;
    for (const Coeffs& f : std::vector<Coeffs>{{0.0, 3.0}, {-2.0, 3.0}})
        cantor_o = std::max(cantor_o, oracle::lip_2d(f, {1.0}));
    for (const Coeffs& f : std::vector<Coeffs>{{0.0, 3.0}, {-r1, 3.0 * r1}, {-2.0 * r2, 3.0 * r2}, {-2.0, 3.0}})
        koch_o = std::max(koch_o, oracle::lip_2d(f, {1.0}));
    const double cantor = sup_lip(examples::cantor_spec().spec), koch = sup_lip(examples::koch_spec().spec);
    report(4,
           std::isfinite(cantor) && std::isfinite(koch) && std::abs(cantor - cantor_o) <= 1e-3 &&
               std::abs(koch - koch_o) <= 1e-3,
           fmt("cantor sup %.9f (oracle %.9f), koch sup %.9f (oracle %.9f)", cantor, cantor_o, koch, koch_o));
}

void criterion5() {
    const double target = std::log(2.0) / (2.0 * std::numbers::pi);
    const auto cantor = examples::cantor_endpoint_cloud(8);
    const auto best = max_separating_modulus(cantor, std::pow(3.0, -8));
    const double m = best ? best->modulus : 0.0;
    const bool a = best && std::abs(m - target) <= 1e-6;

    std::vector<double> floors;
    for (int k = 4; k <= 8; ++k) floors.push_back(std::pow(3.0, -k));
    double lo = 1e300, hi = -1e300;
    for (const auto& e : perfectness_profile(cantor, floors)) {
        const double v = e.best ? e.best->modulus : 0.0;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool b = hi - lo <= 1e-6;

    const auto koch = repelling_cloud(examples::koch_spec().spec, 6).cloud;
    double koch_max = 0.0;
    for (const auto& e : perfectness_profile(koch, floors)) koch_max = std::max(koch_max, e.best ? e.best->modulus : 0.0);
    const bool c = koch_max <= 0.5;

    report(5, a && b && c,
           fmt("[a] cantor level-8 modulus %.6f vs log2/2pi %.6f: %s; [b] profile spread %.6f (<= 1e-6): %s; "
               "[c] koch profile max %.4f (<= 0.5): %s",
               m, target, a ? "ok" : "mismatch", hi - lo, b ? "ok" : "not constant", koch_max, c ? "ok" : "exceeded"));
}

void criterion6() {
    const auto cfg = examples::schottky_spec(4);
    const auto cloud = repelling_cloud(cfg.spec, 4).cloud;
    bool sep = true, closed = true, increasing = true;
    std::string mods;
    double prev = -1.0;
    for (int n = 1; n <= 3; ++n) {
        const auto& a = cfg.separating_annuli[static_cast<std::size_t>(n - 1)];
        sep = sep && separates(a.shrunk(cfg.cloud_accuracy), cloud);
        const double mod = modulus(a);
        const double want = (std::log(3.0 / 5.0) + (2 * n + 1) * std::log(2.0)) / (2.0 * std::numbers::pi);
        closed = closed && std::abs(mod - want) <= 1e-12;
        increasing = increasing && mod > prev;
        prev = mod;
        mods += fmt("%s%.4f", n > 1 ? ", " : "", mod);
    }
    report(6, sep && closed && increasing,
           fmt("%zu limit points; A_1..A_3 separate: %s; moduli %s match closed form: %s; increasing: %s", cloud.size(),
               sep ? "yes" : "no", mods.c_str(), closed ? "yes" : "no", increasing ? "yes" : "no"));
}

void criterion7() {
    const auto spec = examples::example4_spec(18).spec;
    const auto r = forward_invariant_escape_region(spec, 16.0);
    const auto c1 = repelling_cloud(spec, 1).cloud;
    bool has = true;
    for (int n = 0; n <= 18; ++n) has = has && contains(c1, -1.0 / (n + 2.0), 1e-9);
    const auto c3 = repelling_cloud(spec, 3).cloud;
    std::size_t outside = 0;
    for (const auto& p : c3.points) {
        if (p.is_infinite()) {
            ++outside;
            continue;
        }
        const cplx z = p.value();
        bool in = std::abs(z) <= 1.0 + 1e-6;
        for (int n = 0; n <= 18 && !in; ++n) in = std::abs(z + examples::example4_shift(n)) <= 1.0 + 1e-6;
        if (!in) ++outside;
    }
    report(7, r && *r <= 10.0 && has && outside == 0,
           fmt("escape radius %s; -1/(n+2) for n<=18 %s; %zu of %zu length-<=3 repelling points outside the disks",
               r ? fmt("%.4g", *r).c_str() : "absent", has ? "present" : "missing", outside, c3.size()));
}

void criterion8() {
    const double cantor = self_similarity_defect(examples::cantor_spec().spec, examples::cantor_endpoint_cloud(8));
    const auto koch_spec = examples::koch_spec().spec;
    const double koch = self_similarity_defect(koch_spec, backward_orbit_cloud(koch_spec, 0.5, 50000, 30, 42).cloud);
    report(8, cantor <= 2.0 * std::pow(3.0, -8) && koch <= 0.05,
           fmt("cantor defect %.3g (<= %.3g), koch backward defect %.3g (<= 0.05)", cantor, 2.0 * std::pow(3.0, -8),
               koch));
}

void criterion9() {
    const double floors[] = {1e-4, 1e-2, 0.1};
    int same = 0;
    std::size_t largest = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto pts = oracle::random_cloud(seed, 25 * seed);
        largest = std::max(largest, pts.size());
        PointCloud cloud;
        for (auto z : pts) cloud.points.emplace_back(z);
        const double floor = floors[seed % 3];
        const auto got = max_separating_modulus(cloud, floor);
        const auto want = oracle::brute_force_annulus(pts, floor);
        bool eq = got.has_value() == want.has_value();
        if (eq && got) {
            eq = got->modulus == std::log(want->ratio) / (2.0 * std::numbers::pi) &&
                 got->annulus.center() == want->center && got->annulus.r1() == want->r1 &&
                 got->annulus.r2() == want->r2;
        }
        same += eq;
    }
    report(9, same == 20, fmt("%d of 20 random clouds (up to %zu points) identical to brute force", same, largest));
}

std::string run_cli(const std::vector<std::string>& args, int threads) {
    omp_set_num_threads(threads);
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
}

void criterion10() {
    const std::vector<std::vector<std::string>> runs{
        {"lip", "--example", "koch"},
        {"lip", "--example", "schottky"},
        {"cloud", "--example", "cantor", "--method", "repelling", "--max-word-len", "6"},
        {"cloud", "--example", "koch", "--method", "backward", "--samples", "5000", "--seed", "7", "--format", "json"},
        {"render", "--example", "koch", "--method", "backward", "--samples", "5000", "--seed", "7", "--width", "128",
         "--height", "128"},
        {"perfectness", "--example", "schottky", "--max-word-len", "4", "--floors", "1e-2,1e-4"},
        {"selfsim", "--example", "koch", "--method", "backward", "--samples", "5000", "--seed", "3"},
        {"escape", "--example", "example4", "--order", "18"},
        {"examples", "list"},
        {"examples", "dump", "schottky", "--order", "3"},
    };
    int stable = 0;
    std::string bad;
    for (const auto& args : runs) {
        const auto a = run_cli(args, 1), b = run_cli(args, 1), c = run_cli(args, 8);
        const bool ok = a == b && a == c && a.rfind("0\n", 0) == 0;
        stable += ok;
        if (!ok) bad += " " + args[0];
    }
    omp_set_num_threads(1);
    report(10, stable == static_cast<int>(runs.size()),
           fmt("%d of %zu runs byte-identical across repeats and 1 vs 8 threads%s", stable, runs.size(),
               bad.empty() ? "" : (";" + bad).c_str()));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
