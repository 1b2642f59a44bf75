#include "rsg/examples.hpp"

#include <cmath>
#include <numbers>

#include "rsg/error.hpp"

namespace rsg::examples {

using nlohmann::json;

ExampleConfig cantor_spec() {
    SemigroupSpec spec({RationalMap(MoebiusMap(3.0, 0.0, 0.0, 1.0)), RationalMap(MoebiusMap(3.0, -2.0, 0.0, 1.0))},
                       false, kDefaultDegreeCap, {"3z", "3z-2"});
    ExampleConfig cfg{"cantor", std::move(spec), {}, {}, {}, 0.0};
    cfg.expected = {{"julia_set", "middle-third Cantor set"},
                    {"hull", {0.0, 1.0}},
                    {"source", "IFS z/3, (z+2)/3; attractor = Julia set of the inverse maps"}};
    return cfg;
}

ExampleConfig koch_spec() {
    const cplx r1 = std::polar(1.0, -std::numbers::pi / 3.0);
    const cplx r2 = std::polar(1.0, -2.0 * std::numbers::pi / 3.0);
    SemigroupSpec spec({RationalMap(MoebiusMap(3.0, 0.0, 0.0, 1.0)),
                        RationalMap(MoebiusMap(3.0 * r1, -r1, 0.0, 1.0)),
                        RationalMap(MoebiusMap(3.0 * r2, -2.0 * r2, 0.0, 1.0)),
                        RationalMap(MoebiusMap(3.0, -2.0, 0.0, 1.0))},
                       false, kDefaultDegreeCap, {"3z", "e^{-i pi/3}(3z-1)", "e^{-2i pi/3}(3z-2)", "3z-2"});
    ExampleConfig cfg{"koch", std::move(spec), {}, {}, {}, 0.0};
    cfg.expected = {{"julia_set", "von Koch curve from 0 to 1"},
                    {"bbox", {0.0, 1.0, 0.0, 1.0 / (2.0 * std::sqrt(3.0))}},
                    {"source", "IFS inverses; peak height 1/(2 sqrt 3)"}};
    return cfg;
}

double example4_shift(int n) { return 1.0 + 1.0 / (n + 2.0); }

ExampleConfig example4_spec(int n) {
    if (n < 0) throw InputError("example4_spec: N must be >= 0");
    std::vector<RationalMap> gens{RationalMap::polynomial(Polynomial{0.0, 0.0, 1.0})};
    std::vector<std::string> labels{"z^2"};
    json shifts = json::array(), repelling = json::array();
    for (int k = 0; k <= n; ++k) {
        const double b = example4_shift(k);
        // (z + b)^2 - b
        gens.push_back(RationalMap::polynomial(Polynomial{b * b - b, 2.0 * b, 1.0}));
        labels.push_back("f" + std::to_string(k));
        shifts.push_back(b);
        repelling.push_back(1.0 - b);
    }
    ExampleConfig cfg{"example4", SemigroupSpec(std::move(gens), false, kDefaultDegreeCap, std::move(labels)),
                      {}, {}, {}, 0.0};
    cfg.expected = {{"N", n},
                    {"b", shifts},
                    {"repelling_fixed_points", repelling},
                    {"escape_radius_exists", true},
                    {"escape_radius_bound", 10.0},
                    {"source", "f_n conjugates z^2 by z -> z + b_n; repelling point 1 - b_n = -1/(n+2)"}};
    return cfg;
}

std::vector<Circle> schottky_circles(int n) {
    std::vector<Circle> inner, outer;
    for (int k = 1; k <= n; ++k) {
        const double a = std::ldexp(1.0, -k * k);
        inner.push_back({a, a / 4.0});
        outer.push_back({cplx(a, 2.0), a / 4.0});
    }
    inner.insert(inner.end(), outer.begin(), outer.end());
    return inner;
}

ExampleConfig schottky_spec(int n) {
    if (n < 1 || n > 6) throw InputError("schottky_spec: N must be in 1..6");
    std::vector<RationalMap> gens;
    std::vector<std::string> labels;
    json as = json::array(), rs = json::array();
    for (int k = 1; k <= n; ++k) {
        const double a = std::ldexp(1.0, -k * k);
        const double r = a / 4.0;
        const cplx image(a, 2.0);
        // image + r^2/(z - a) = (image z + r^2 - image a) / (z - a)
        gens.emplace_back(MoebiusMap(image, r * r - image * a, 1.0, -a));
        labels.push_back("g" + std::to_string(k));
        as.push_back(a);
        rs.push_back(r);
    }
    ExampleConfig cfg{"schottky", SemigroupSpec(std::move(gens), true, kDefaultDegreeCap, std::move(labels)),
                      {}, {}, {}, 1e-8};
    json annuli = json::array();
    for (int k = 1; k < n; ++k) {
        const double a = std::ldexp(1.0, -k * k), an = std::ldexp(1.0, -(k + 1) * (k + 1));
        RoundAnnulus ann(0.0, an + an / 4.0, a - a / 4.0);
        const double closed = (std::log(3.0 / 5.0) + (2.0 * k + 1.0) * std::log(2.0)) / (2.0 * std::numbers::pi);
        cfg.separating_annuli.push_back(ann);
        cfg.closed_form_moduli.push_back(closed);
        annuli.push_back({{"n", k}, {"r1", ann.r1()}, {"r2", ann.r2()}, {"modulus", closed}});
    }
    cfg.expected = {{"N", n},
                    {"a", as},
                    {"r", rs},
                    {"annuli", annuli},
                    {"cloud_accuracy", cfg.cloud_accuracy},
                    {"source", "A_n = Ann(0; a_{n+1}+r_{n+1}, a_n-r_n), modulus (log(3/5)+(2n+1)log 2)/(2 pi)"}};
    return cfg;
}

PointCloud cantor_endpoint_cloud(int level) {
    if (level < 0 || level > 20) throw InputError("cantor_endpoint_cloud: level must be in 0..20");
    std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
    for (int k = 0; k < level; ++k) {
        std::vector<std::pair<double, double>> next;
        for (auto [a, b] : iv) {
            next.emplace_back(a, a + (b - a) / 3.0);
            next.emplace_back(b - (b - a) / 3.0, b);
        }
        iv = std::move(next);
    }
    PointCloud c;
    c.method_tag = "cantor_endpoints";
    c.params = {{"level", level}};
    for (auto [a, b] : iv) {
        c.points.emplace_back(a);
        c.points.emplace_back(b);
    }
    return c;
}

std::vector<std::string> names() { return {"cantor", "koch", "example4", "schottky"}; }

ExampleConfig by_name(const std::string& name, std::optional<int> order) {
    if (name == "cantor") return cantor_spec();
    if (name == "koch") return koch_spec();
    if (name == "example4") return example4_spec(order.value_or(18));
    if (name == "schottky") return schottky_spec(order.value_or(4));
    throw InputError("unknown example '" + name + "'");
}

}  // namespace rsg::examples
