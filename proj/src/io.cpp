#include "rsg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rsg/error.hpp"

namespace rsg::io {

namespace {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a number or [re, im], got " + j.dump());
}

json coeffs_to_json(const Polynomial& p) {
    json a = json::array();
    for (int k = 0; k <= p.degree(); ++k) a.push_back(cplx_to_json(p[k]));
    return a;
}

Polynomial coeffs_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw InputError(std::string("map: '") + what + "' must be a non-empty array");
    std::vector<cplx> c;
    for (const auto& e : j) c.push_back(cplx_from_json(e));
    return Polynomial(std::move(c));
}

double parse_double(std::string_view s, std::size_t line) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x))
        throw InputError("cloud line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    return x;
}

}  // namespace

json map_to_json(const RationalMap& f) {
    if (auto m = f.moebius())
        return {{"moebius", {cplx_to_json(m->a()), cplx_to_json(m->b()), cplx_to_json(m->c()), cplx_to_json(m->d())}}};
    return {{"num", coeffs_to_json(f.num())}, {"den", coeffs_to_json(f.den())}};
}

RationalMap map_from_json(const json& j) {
    if (!j.is_object()) throw InputError("map must be a JSON object");
    if (j.contains("moebius")) {
        const json& m = j["moebius"];
        if (!m.is_array() || m.size() != 4) throw InputError("map: 'moebius' needs four entries [a, b, c, d]");
        return RationalMap(MoebiusMap(cplx_from_json(m[0]), cplx_from_json(m[1]), cplx_from_json(m[2]),
                                      cplx_from_json(m[3])));
    }
    if (!j.contains("num")) throw InputError("map: need 'num' (and optionally 'den') or 'moebius'");
    Polynomial num = coeffs_from_json(j["num"], "num");
    Polynomial den = j.contains("den") ? coeffs_from_json(j["den"], "den") : Polynomial{1.0};
    return RationalMap(std::move(num), std::move(den));
}

json spec_to_json(const SemigroupSpec& spec) {
    json gens = json::array(), labels = json::array();
    for (std::size_t i = 0; i < spec.base_count(); ++i) {
        gens.push_back(map_to_json(spec.generator(i)));
        labels.push_back(spec.labels()[i]);
    }
    return {{"generators", gens}, {"group_mode", spec.group_mode()}, {"degree_cap", spec.degree_cap()},
            {"labels", labels}};
}

SemigroupSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw InputError("spec: need an object with a 'generators' array");
    std::vector<RationalMap> gens;
    for (const auto& g : j["generators"]) gens.push_back(map_from_json(g));
    try {
        const bool group = j.value("group_mode", false);
        const int cap = j.value("degree_cap", kDefaultDegreeCap);
        std::vector<std::string> labels = j.value("labels", std::vector<std::string>{});
        return SemigroupSpec(std::move(gens), group, cap, std::move(labels));
    } catch (const json::exception& e) {
        throw InputError(std::string("spec: ") + e.what());
    }
}

SemigroupSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    try {
        return spec_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw InputError("spec file '" + path + "': " + e.what());
    }
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x + 0.0);  // no "-0"
    return std::string(buf, p);
}

void write_cloud_text(std::ostream& out, const PointCloud& cloud) {
    for (const auto& p : cloud.points) {
        if (p.is_infinite()) {
            out << "inf\n";
        } else {
            const cplx z = p.value();
            out << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
        }
    }
}

PointCloud read_cloud_text(std::istream& in) {
    PointCloud c;
    c.method_tag = "file";
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (a[0] == '#') continue;
        if (a == "inf") {
            c.points.push_back(SpherePoint::infinity());
            continue;
        }
        if (!(ls >> b) || (ls >> extra)) throw InputError("cloud line " + std::to_string(n) + ": expected 're im'");
        c.points.emplace_back(parse_double(a, n), parse_double(b, n));
    }
    return c;
}

json point_to_json(const SpherePoint& p) {
    if (p.is_infinite()) return {{"inf", true}};
    return {{"re", p.value().real()}, {"im", p.value().imag()}};
}

SpherePoint point_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
    if (j.is_object()) {
        if (j.value("inf", false)) return SpherePoint::infinity();
        if (j.contains("re") && j["re"].is_number()) {
            const double im = j.contains("im") && j["im"].is_number() ? j["im"].get<double>() : 0.0;
            return SpherePoint(j["re"].get<double>(), im);
        }
    }
    return SpherePoint(cplx_from_json(j));
}

json cloud_to_json(const PointCloud& cloud) {
    json pts = json::array();
    for (const auto& p : cloud.points) pts.push_back(point_to_json(p));
    return {{"method", cloud.method_tag}, {"params", cloud.params}, {"points", pts}};
}

PointCloud cloud_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw InputError("cloud: need an object with a 'points' array");
    PointCloud c;
    c.method_tag = j.value("method", std::string("file"));
    if (j.contains("params")) c.params = j["params"];
    for (const auto& p : j["points"]) c.points.push_back(point_from_json(p));
    return c;
}

PointCloud load_cloud(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cloud file '" + path + "'");
    in >> std::ws;
    if (in.peek() == '{') {
        try {
            return cloud_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw InputError("cloud file '" + path + "': " + e.what());
        }
    }
    return read_cloud_text(in);
}

}  // namespace rsg::io
