#include "rsg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsg/error.hpp"
#include "rsg/examples.hpp"
#include "rsg/io.hpp"
#include "rsg/perfectness.hpp"
#include "rsg/semigroup.hpp"

namespace rsg::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string spec_path;
    std::string example;
    std::optional<int> order;
    std::string method = "repelling";
    int max_word_len = 5;
    std::size_t samples = 10000;
    std::size_t burn_in = 30;
    std::uint64_t seed = 0;
    std::string start = "0.5";
    std::string format = "text";
    std::string out_path;
    int threads = 0;
    std::string floors = "1e-2,1e-3,1e-4,1e-5,1e-6";
    std::string window;
    int width = 512;
    int height = 512;
    std::string cloud_path;
    double r_max = 16.0;
    double tol = 1e-9;
    std::string dump_name;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view tok(text.data() + pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        double x = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
            throw InputError(std::string("bad number in ") + what + ": '" + std::string(tok) + "'");
        v.push_back(x);
        pos = end + 1;
    }
    return v;
}

SpherePoint parse_point(const std::string& text) {
    if (text == "inf") return SpherePoint::infinity();
    auto v = parse_list(text, "--start");
    if (v.size() == 1) return SpherePoint(v[0]);
    if (v.size() == 2) return SpherePoint(v[0], v[1]);
    throw InputError("--start expects 're', 're,im' or 'inf'");
}

struct Source {
    SemigroupSpec spec;
    std::optional<examples::ExampleConfig> example;
};

Source resolve_spec(const Options& o) {
    if (!o.spec_path.empty() && !o.example.empty()) throw InputError("give either --spec or --example, not both");
    if (!o.example.empty()) {
        auto cfg = examples::by_name(o.example, o.order);
        SemigroupSpec spec = cfg.spec;
        return {std::move(spec), std::move(cfg)};
    }
    if (!o.spec_path.empty()) return {io::load_spec(o.spec_path), std::nullopt};
    throw InputError("a spec is required: --spec PATH or --example NAME");
}

JuliaApproximation build_cloud(const SemigroupSpec& spec, const Options& o, std::ostream& err) {
    JuliaApproximation j;
    if (o.method == "repelling") {
        j = repelling_cloud(spec, o.max_word_len);
    } else if (o.method == "backward") {
        j = backward_orbit_cloud(spec, parse_point(o.start), o.samples, o.burn_in, o.seed);
    } else {
        throw InputError("--method must be 'repelling' or 'backward'");
    }
    for (const auto& w : j.report.warnings) err << "warning: " << w << '\n';
    return j;
}

PointCloud obtain_cloud(const Options& o, std::ostream& err) {
    if (!o.cloud_path.empty()) return io::load_cloud(o.cloud_path);
    return build_cloud(resolve_spec(o).spec, o, err).cloud;
}

// Writes to --out if given, else to the stream.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& fn) {
    if (o.out_path.empty()) {
        fn(out);
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.out_path + "'");
    fn(f);
}

void emit_json(const Options& o, std::ostream& out, const json& j) {
    emit(o, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

json annulus_json(const SeparatingAnnulus& a) {
    const cplx c = a.annulus.center();
    return {{"modulus", a.modulus},
            {"annulus", {{"center", {c.real(), c.imag()}}, {"r1", a.annulus.r1()}, {"r2", a.annulus.r2()}}}};
}

void cmd_lip(const Options& o, std::ostream& out) {
    const auto src = resolve_spec(o);
    json gens = json::array();
    double sup = 0.0;
    for (std::size_t i = 0; i < src.spec.size(); ++i) {
        const double l = lipschitz_constant(src.spec.generator(i), o.tol);
        sup = std::max(sup, l);
        gens.push_back({{"label", src.spec.labels()[i]}, {"lip", l}});
    }
    emit_json(o, out, {{"generators", gens}, {"sup", sup}, {"tol", o.tol}});
}

void cmd_cloud(const Options& o, std::ostream& out, std::ostream& err) {
    const auto src = resolve_spec(o);
    const auto j = build_cloud(src.spec, o, err);
    if (o.format == "json") {
        emit_json(o, out, io::cloud_to_json(j.cloud));
    } else if (o.format == "text") {
        emit(o, out, [&](std::ostream& s) { io::write_cloud_text(s, j.cloud); });
    } else {
        throw InputError("--format must be 'text' or 'json'");
    }
}

Window default_window(const PointCloud& c) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& p : c.points) {
        if (p.is_infinite()) continue;
        const cplx z = p.value();
        if (!any) {
            xmin = xmax = z.real();
            ymin = ymax = z.imag();
            any = true;
        }
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    if (!any) throw InputError("render: cloud has no finite points");
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax), h = 0.55 * span;
    return {cx - h, cx + h, cy - h, cy + h};
}

void cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
    const PointCloud cloud = obtain_cloud(o, err);
    Window w;
    if (o.window.empty()) {
        w = default_window(cloud);
    } else {
        const auto v = parse_list(o.window, "--window");
        if (v.size() != 4) throw InputError("--window expects xmin,xmax,ymin,ymax");
        w = {v[0], v[1], v[2], v[3]};
    }
    const Raster r = render_cloud(cloud, w, o.width, o.height);
    emit(o, out, [&](std::ostream& s) { write_pgm(s, r); });
}

void cmd_perfectness(const Options& o, std::ostream& out, std::ostream& err) {
    std::optional<examples::ExampleConfig> ex;
    PointCloud cloud;
    if (!o.cloud_path.empty()) {
        cloud = io::load_cloud(o.cloud_path);
    } else {
        auto src = resolve_spec(o);
        cloud = build_cloud(src.spec, o, err).cloud;
        ex = std::move(src.example);
    }
    const auto floors = parse_list(o.floors, "--floors");
    json profile = json::array();
    for (const auto& e : perfectness_profile(cloud, floors)) {
        json row = {{"floor", e.floor}};
        if (e.best) row.update(annulus_json(*e.best));
        else row["modulus"] = nullptr;
        profile.push_back(row);
    }
    json result = {{"points", cloud.size()}, {"profile", profile}};
    if (ex && !ex->separating_annuli.empty()) {
        json annuli = json::array();
        for (std::size_t k = 0; k < ex->separating_annuli.size(); ++k) {
            const auto& a = ex->separating_annuli[k];
            const auto shrunk = a.shrunk(ex->cloud_accuracy);
            annuli.push_back({{"n", k + 1},
                              {"r1", a.r1()},
                              {"r2", a.r2()},
                              {"modulus", modulus(a)},
                              {"expected_modulus", ex->closed_form_moduli[k]},
                              {"separates", separates(shrunk, cloud)}});
        }
        result["example_annuli"] = annuli;
    }
    emit_json(o, out, result);
}

void cmd_selfsim(const Options& o, std::ostream& out, std::ostream& err) {
    const auto src = resolve_spec(o);
    const PointCloud cloud = o.cloud_path.empty() ? build_cloud(src.spec, o, err).cloud : io::load_cloud(o.cloud_path);
    emit_json(o, out, {{"points", cloud.size()}, {"defect", self_similarity_defect(src.spec, cloud)}});
}

void cmd_escape(const Options& o, std::ostream& out) {
    const auto src = resolve_spec(o);
    const auto r = forward_invariant_escape_region(src.spec, o.r_max);
    json j = {{"r_max", o.r_max}};
    if (r) j["radius"] = *r;
    else j["radius"] = "absent";
    emit_json(o, out, j);
}

void cmd_examples_list(const Options& o, std::ostream& out) {
    json j = json::array();
    for (const auto& n : examples::names()) {
        const auto cfg = examples::by_name(n);
        j.push_back({{"name", n}, {"generators", cfg.spec.base_count()}, {"group_mode", cfg.spec.group_mode()}});
    }
    emit_json(o, out, j);
}

void cmd_examples_dump(const Options& o, std::ostream& out) {
    const auto cfg = examples::by_name(o.dump_name, o.order);
    json j = io::spec_to_json(cfg.spec);
    j["name"] = cfg.name;
    j["expected"] = cfg.expected;
    emit_json(o, out, j);
}

void add_spec_options(CLI::App* s, Options& o) {
    s->add_option("--spec", o.spec_path, "Semigroup spec JSON file");
    s->add_option("--example", o.example, "Built-in example: cantor, koch, example4, schottky");
    s->add_option("--order", o.order, "N for example4 / schottky");
}

void add_cloud_options(CLI::App* s, Options& o) {
    s->add_option("--method", o.method, "repelling | backward")->capture_default_str();
    s->add_option("--max-word-len", o.max_word_len, "Word length for the repelling method")->capture_default_str();
    s->add_option("--samples", o.samples, "Samples for the backward method")->capture_default_str();
    s->add_option("--burn-in", o.burn_in, "Discarded backward steps")->capture_default_str();
    s->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    s->add_option("--start", o.start, "Backward walk start: re[,im] or inf")->capture_default_str();
}

void add_common(CLI::App* s, Options& o) {
    s->add_option("--out", o.out_path, "Output file (default: stdout)");
    s->add_option("--threads", o.threads, "OpenMP threads (0: runtime default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Julia sets of finitely generated rational semigroups", "rsg"};
    app.require_subcommand(1);

    auto* lip = app.add_subcommand("lip", "Spherical Lipschitz constants of the generators");
    add_spec_options(lip, o);
    add_common(lip, o);
    lip->add_option("--tol", o.tol, "Relative refinement tolerance")->capture_default_str();

    auto* cloud = app.add_subcommand("cloud", "Point cloud approximating J(G)");
    add_spec_options(cloud, o);
    add_cloud_options(cloud, o);
    add_common(cloud, o);
    cloud->add_option("--format", o.format, "text | json")->capture_default_str();

    auto* render = app.add_subcommand("render", "Rasterize a cloud to an 8-bit PGM (P5)");
    add_spec_options(render, o);
    add_cloud_options(render, o);
    add_common(render, o);
    render->add_option("--cloud", o.cloud_path, "Cloud file instead of a spec");
    render->add_option("--window", o.window, "xmin,xmax,ymin,ymax");
    render->add_option("--width", o.width)->capture_default_str();
    render->add_option("--height", o.height)->capture_default_str();

    auto* perf = app.add_subcommand("perfectness", "Separating-annulus profile of a cloud");
    add_spec_options(perf, o);
    add_cloud_options(perf, o);
    add_common(perf, o);
    perf->add_option("--cloud", o.cloud_path, "Cloud file instead of a spec");
    perf->add_option("--floors", o.floors, "Comma-separated scale floors, non-increasing")->capture_default_str();

    auto* selfsim = app.add_subcommand("selfsim", "Backward self-similarity defect of a cloud");
    add_spec_options(selfsim, o);
    add_cloud_options(selfsim, o);
    add_common(selfsim, o);
    selfsim->add_option("--cloud", o.cloud_path, "Cloud file instead of building one");

    auto* escape = app.add_subcommand("escape", "Forward-invariant neighbourhood of infinity");
    add_spec_options(escape, o);
    add_common(escape, o);
    escape->add_option("--r-max", o.r_max, "Largest radius tried")->capture_default_str();

    auto* ex = app.add_subcommand("examples", "Built-in examples");
    ex->require_subcommand(1);
    auto* ex_list = ex->add_subcommand("list", "List example names");
    add_common(ex_list, o);
    auto* ex_dump = ex->add_subcommand("dump", "Print an example's spec JSON");
    ex_dump->add_option("name", o.dump_name, "Example name")->required();
    ex_dump->add_option("--order", o.order, "N for example4 / schottky");
    add_common(ex_dump, o);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (o.threads < 0) {
        err << "error: --threads must be >= 0\n";
        return 1;
    }
    if (o.threads > 0) omp_set_num_threads(o.threads);

    try {
        if (*lip) cmd_lip(o, out);
        else if (*cloud) cmd_cloud(o, out, err);
        else if (*render) cmd_render(o, out, err);
        else if (*perf) cmd_perfectness(o, out, err);
        else if (*selfsim) cmd_selfsim(o, out, err);
        else if (*escape) cmd_escape(o, out);
        else if (*ex_list) cmd_examples_list(o, out);
        else if (*ex_dump) cmd_examples_dump(o, out);
        return 0;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << json{{"error", "numerical"}, {"message", e.what()}, {"residual", e.residual()}, {"context", e.context()}}
                   .dump()
            << '\n';
        return 2;
    } catch (const DegreeCapError& e) {
        err << json{{"error", "degree_cap"}, {"message", e.what()}, {"degree", e.degree()}, {"cap", e.cap()}}.dump()
            << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rsg::cli
