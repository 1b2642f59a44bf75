#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsg/perfectness.hpp"
#include "rsg/semigroup.hpp"

namespace rsg::examples {

struct ExampleConfig {
    std::string name;
    SemigroupSpec spec;
    // Documented target quantities, each with a "source" note.
    nlohmann::json expected = nlohmann::json::object();
    // Annuli that separate J(G) by construction (Schottky only).
    std::vector<RoundAnnulus> separating_annuli;
    std::vector<double> closed_form_moduli;
    // Relative margin by which separating_annuli are shrunk before testing
    // them against a computed cloud.
    double cloud_accuracy = 0.0;
};

// <3z, 3z-2>: inverses of z/3 and (z+2)/3; J is the middle-third Cantor set.
ExampleConfig cantor_spec();

// Inverses of z/3, (e^{i pi/3} z + 1)/3, (e^{2 i pi/3} z + 2)/3, (z+2)/3;
// J is the von Koch curve from 0 to 1.
ExampleConfig koch_spec();

// <z^2, f_0, ..., f_N> with f_n(z) = (z + b_n)^2 - b_n, b_n = 1 + 1/(n+2).
ExampleConfig example4_spec(int n);
double example4_shift(int n);

// Schottky group pairing C_n = {|z - a_n| = r_n} with C'_n = {|z - a_n - 2i| = r_n},
// a_n = 2^{-n^2}, r_n = a_n / 4, via g_n(z) = (a_n + 2i) + r_n^2 / (z - a_n).
// 1 <= n <= 6.
ExampleConfig schottky_spec(int n);

struct Circle {
    cplx center;
    double radius;
};
// C_1..C_N followed by C'_1..C'_N.
std::vector<Circle> schottky_circles(int n);

// Endpoints of the 2^level intervals of the middle-third construction.
PointCloud cantor_endpoint_cloud(int level);

std::vector<std::string> names();

// Looks up cantor, koch, example4 (order = N, default 18) or schottky
// (order = N, default 4).
ExampleConfig by_name(const std::string& name, std::optional<int> order = std::nullopt);

}  // namespace rsg::examples
