#include <doctest.h>

#include "oracles.hpp"
#include "rsg/error.hpp"
#include "rsg/examples.hpp"

using namespace rsg;
using namespace rsg::examples;

namespace {

bool near(const SpherePoint& p, const SpherePoint& q, double tol) { return chordal_dist(p, q) <= tol; }

bool contains(const PointCloud& c, const SpherePoint& p, double tol) {
    return std::any_of(c.points.begin(), c.points.end(), [&](const SpherePoint& q) { return near(p, q, tol); });
}

double sup_lip(const SemigroupSpec& s) {
    double m = 0.0;
    for (const auto& g : s.generators()) m = std::max(m, lipschitz_constant(g));
    return m;
}

}  // namespace

TEST_CASE("catalogue") {
    CHECK(names() == std::vector<std::string>{"cantor", "koch", "example4", "schottky"});
    for (const auto& n : names()) CHECK(by_name(n).name == n);
    CHECK(by_name("example4", 3).spec.size() == 5);
    CHECK(by_name("schottky", 2).spec.size() == 4);
    CHECK_THROWS_AS(by_name("mandelbrot"), InputError);
}

TEST_CASE("cantor") {
    const auto cfg = cantor_spec();
    const auto& s = cfg.spec;
    REQUIRE(s.size() == 2);
    CHECK(near(s.generator(0)(1.0 / 3.0), 1.0, 1e-15));
    for (const auto& g : s.generators()) {
        const auto fp = fixed_points(g);
        bool found = false;
        for (const auto& r : fp)
            if (r.location.is_infinite()) {
                found = true;
                CHECK(r.kind == FixedPointClass::attracting);
                CHECK(std::abs(r.multiplier - 1.0 / 3.0) < 1e-12);
            }
        CHECK(found);
    }
    const auto c = backward_orbit_cloud(s, 0.5, 5000, 30, 9).cloud;
    for (const auto& p : c.points) {
        REQUIRE(p.is_finite());
        CHECK(p.value().real() >= -1e-9);
        CHECK(p.value().real() <= 1.0 + 1e-9);
        CHECK(std::abs(p.value().imag()) <= 1e-9);
    }
    const auto e = cantor_endpoint_cloud(3);
    CHECK(e.size() == 16);
    std::vector<double> xs;
    for (const auto& p : e.points) xs.push_back(p.value().real());
    std::sort(xs.begin(), xs.end());
    const auto want = oracle::cantor_endpoints(3);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(xs[i] == doctest::Approx(want[i]).epsilon(1e-15));
}

TEST_CASE("koch") {
    const auto s = koch_spec().spec;
    REQUIRE(s.size() == 4);
    const cplx z(0.3, 0.1);
    const cplx g2 = (std::polar(1.0, std::numbers::pi / 3.0) * z + 1.0) / 3.0;
    CHECK(near(s.generator(1)(g2), z, 1e-12));
    const cplx g3 = (std::polar(1.0, 2.0 * std::numbers::pi / 3.0) * z + 2.0) / 3.0;
    CHECK(near(s.generator(2)(g3), z, 1e-12));

    const auto c = repelling_cloud(s, 4).cloud;
    CHECK(contains(c, 0.0, 1e-6));
    CHECK(contains(c, 1.0, 1e-6));
    const auto b = backward_orbit_cloud(s, 0.5, 20000, 30, 5).cloud;
    for (const auto* cloud : {&c, &b})
        for (const auto& p : cloud->points) {
            REQUIRE(p.is_finite());
            CHECK(p.value().real() >= -1e-12);
            CHECK(p.value().real() <= 1.0 + 1e-12);
            CHECK(p.value().imag() >= -1e-12);
            CHECK(p.value().imag() <= 0.29);
        }
    // every cloud point is near a level-6 piece of the IFS attractor; chordal
    // distance is at most twice the planar one
    const std::vector<std::pair<cplx, cplx>> ifs{{1.0 / 3.0, 0.0},
                                                  {std::polar(1.0, std::numbers::pi / 3.0) / 3.0, 1.0 / 3.0},
                                                  {std::polar(1.0, 2.0 * std::numbers::pi / 3.0) / 3.0, 2.0 / 3.0},
                                                  {1.0 / 3.0, 2.0 / 3.0}};
    std::vector<std::optional<cplx>> pieces, cloud;
    for (cplx v : oracle::ifs_word_images(ifs, 6)) pieces.emplace_back(v);
    for (const auto& p : c.points) cloud.emplace_back(p.value());
    CHECK(oracle::directed_hausdorff(cloud, pieces) <= 2.2 * std::pow(3.0, -6));
}

TEST_CASE("example 4") {
    for (int n : {0, 1, 7, 18}) {
        const double b = example4_shift(n);
        CHECK(b == doctest::Approx(1.0 + 1.0 / (n + 2.0)));
        const auto f = RationalMap::polynomial(Polynomial{b * b - b, 2.0 * b, 1.0});
        int repelling = 0;
        for (const auto& r : fixed_points(f)) {
            if (r.kind != FixedPointClass::repelling || r.location.is_infinite()) continue;
            ++repelling;
            CHECK(std::abs(r.location.value() - (-1.0 / (n + 2.0))) <= 1e-12);
        }
        CHECK(repelling == 1);
    }
    const auto cfg = example4_spec(18);
    CHECK(cfg.spec.size() == 20);
    CHECK(contains(repelling_cloud(cfg.spec, 1).cloud, -0.05, 1e-9));
    CHECK(cfg.expected["repelling_fixed_points"].size() == 19);
    CHECK_THROWS_AS(example4_spec(-1), InputError);

    for (int n : {0, 1, 4, 18, 40}) {
        const auto r = forward_invariant_escape_region(example4_spec(n).spec, 16.0);
        REQUIRE(r);
        CHECK(*r <= 10.0);
    }
}

TEST_CASE("example 4: Lipschitz bound is uniform in N") {
    // Oracle: sup of Lip((z+b)^2 - b) over the closure b in [1, 3/2] of the
    // shift family, by the 2-D grid oracle on a grid of b values.
    double family = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double b = 1.0 + 0.05 * k;
        family = std::max(family, oracle::lip_2d({b * b - b, 2.0 * b, 1.0}, {1.0}, 200, 400));
    }
    for (int n : {0, 3, 18, 60}) {
        const double s = sup_lip(example4_spec(n).spec);
        CHECK(std::isfinite(s));
        CHECK(std::abs(s - family) <= 1e-2);
    }
}

TEST_CASE("schottky") {
    const auto cfg = schottky_spec(4);
    const auto& s = cfg.spec;
    CHECK(s.group_mode());
    CHECK(s.base_count() == 4);
    CHECK(s.size() == 8);
    // pairing identity |g_1(z) - c'| = r^2/|z - c| on C_1
    CHECK(std::abs(s.generator(0)(5.0 / 8.0).value() - cplx(0.5, 2.0)) == doctest::Approx(0.125).epsilon(1e-12));
    const auto circles = schottky_circles(4);
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j)
            CHECK(std::abs(circles[i].center - circles[j].center) > circles[i].radius + circles[j].radius);
    // C_n onto C'_n, interior onto exterior
    for (int n = 0; n < 4; ++n) {
        const auto& c = circles[static_cast<std::size_t>(n)];
        const auto& cp = circles[static_cast<std::size_t>(n + 4)];
        for (int k = 0; k < 16; ++k) {
            const cplx z = c.center + std::polar(c.radius, 2.0 * std::numbers::pi * k / 16);
            const cplx w = s.generator(static_cast<std::size_t>(n))(z).value();
            CHECK(std::abs(std::abs(w - cp.center) - cp.radius) <= 1e-9 * cp.radius);
            const cplx zi = c.center + std::polar(0.5 * c.radius, 0.3 * k);
            CHECK(std::abs(s.generator(static_cast<std::size_t>(n))(zi).value() - cp.center) > cp.radius);
        }
    }
    REQUIRE(cfg.separating_annuli.size() == 3);
    CHECK(modulus(cfg.separating_annuli[0]) == doctest::Approx(0.24966).epsilon(1e-4));
    const double closed[] = {0.24965297714861917, 0.47028857730127077, 0.6909241774539224};
    for (int n = 0; n < 3; ++n) {
        CHECK(std::abs(cfg.closed_form_moduli[static_cast<std::size_t>(n)] - closed[n]) <= 1e-12);
        CHECK(std::abs(modulus(cfg.separating_annuli[static_cast<std::size_t>(n)]) - closed[n]) <= 1e-12);
    }
    CHECK_THROWS_AS(schottky_spec(0), InputError);
    CHECK_THROWS_AS(schottky_spec(7), InputError);
    for (int n = 1; n <= 6; ++n) CHECK(schottky_spec(n).spec.size() == static_cast<std::size_t>(2 * n));
}

TEST_CASE("positive examples have finite Lipschitz suprema") {
    CHECK(std::isfinite(sup_lip(cantor_spec().spec)));
    CHECK(std::isfinite(sup_lip(koch_spec().spec)));
}
