#include "rsg/semigroup.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "rsg/error.hpp"
#include "rsg/io.hpp"

namespace rsg {

// ---------------------------------------------------------------- spec

SemigroupSpec::SemigroupSpec(std::vector<RationalMap> generators, bool group_mode, int degree_cap,
                             std::vector<std::string> labels)
    : gens_(std::move(generators)), group_mode_(group_mode), cap_(degree_cap), labels_(std::move(labels)) {
    if (gens_.empty()) throw InputError("SemigroupSpec: at least one generator required");
    if (cap_ < 1) throw InputError("SemigroupSpec: degree_cap must be positive");
    if (!labels_.empty() && labels_.size() != gens_.size())
        throw InputError("SemigroupSpec: one label per generator");
    if (labels_.empty())
        for (std::size_t i = 0; i < gens_.size(); ++i) labels_.push_back("g" + std::to_string(i));

    constexpr double kDup = 1e-12;
    auto present = [&](const RationalMap& f) {
        return std::any_of(gens_.begin(), gens_.end(), [&](const RationalMap& g) {
            return g.degree() == f.degree() && approx_equal(g, f, kDup);
        });
    };
    // drop user duplicates, keeping first occurrences
    {
        std::vector<RationalMap> uniq;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const RationalMap& g) {
                return g.degree() == gens_[i].degree() && approx_equal(g, gens_[i], kDup);
            });
            if (!dup) {
                uniq.push_back(gens_[i]);
                names.push_back(labels_[i]);
            }
        }
        gens_ = std::move(uniq);
        labels_ = std::move(names);
    }
    base_ = gens_.size();

    if (group_mode_) {
        for (std::size_t i = 0; i < base_; ++i) {
            auto m = gens_[i].moebius();
            if (!m) throw InputError("SemigroupSpec: group mode requires Möbius generators");
            RationalMap inv(inverse(*m));
            if (!present(inv)) {
                gens_.push_back(inv);
                labels_.push_back(labels_[i] + "^-1");
            }
        }
    }

    inverse_.assign(gens_.size(), std::nullopt);
    if (group_mode_) {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < gens_.size(); ++j)
                if (gens_[j].moebius()->approx_equal(inverse(*gens_[i].moebius()), 1e-10)) {
                    inverse_[i] = j;
                    break;
                }
    }
}

std::string SemigroupSpec::hash() const {
    const std::string text = io::spec_to_json(*this).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------- words

long word_degree(const SemigroupSpec& spec, const Word& w) {
    long deg = 1;
    for (std::size_t i : w.indices) {
        const long d = spec.generator(i).degree();
        if (deg > LONG_MAX / d) return LONG_MAX;
        deg *= d;
    }
    return deg;
}

bool is_reduced(const SemigroupSpec& spec, const Word& w) {
    if (!spec.group_mode()) return true;
    for (std::size_t k = 0; k + 1 < w.indices.size(); ++k)
        if (spec.inverse_of(w.indices[k + 1]) == w.indices[k]) return false;
    return true;
}

std::vector<EnumeratedWord> enumerate_words(const SemigroupSpec& spec, int max_len) {
    if (max_len < 1) throw InputError("enumerate_words: max_len must be >= 1");
    const std::size_t n = spec.size();
    std::vector<EnumeratedWord> out;
    std::vector<std::size_t> idx;
    for (int len = 1; len <= max_len; ++len) {
        idx.assign(static_cast<std::size_t>(len), 0);
        while (true) {
            Word w{idx};
            const bool functional = word_degree(spec, w) > spec.degree_cap();
            out.push_back({std::move(w), functional});
            // odometer increment, last index fastest
            int pos = len - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) idx[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

namespace {

void check_word(const SemigroupSpec& spec, const Word& w) {
    if (w.indices.empty()) throw InputError("word must be nonempty");
    for (std::size_t i : w.indices)
        if (i >= spec.size()) throw InputError("word index out of range");
}

std::string word_text(const Word& w) {
    std::string s = "(";
    for (std::size_t k = 0; k < w.indices.size(); ++k) s += (k ? "," : "") + std::to_string(w.indices[k]);
    return s + ")";
}

}  // namespace

RationalMap word_map(const SemigroupSpec& spec, const Word& w) {
    check_word(spec, w);
    const long deg = word_degree(spec, w);
    if (deg > spec.degree_cap()) throw DegreeCapError(deg, spec.degree_cap());
    RationalMap acc = spec.generator(w.indices.back());
    for (auto it = w.indices.rbegin() + 1; it != w.indices.rend(); ++it)
        acc = compose(spec.generator(*it), acc, spec.degree_cap());
    return acc;
}

SpherePoint word_eval(const SemigroupSpec& spec, const Word& w, const SpherePoint& p) {
    check_word(spec, w);
    SpherePoint z = p;
    for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) z = spec.generator(*it)(z);
    return z;
}

const char* to_string(CloudMethod m) noexcept {
    return m == CloudMethod::repelling ? "repelling" : "backward_orbit";
}

// ---------------------------------------------------------------- clouds

JuliaApproximation repelling_cloud(const SemigroupSpec& spec, int max_len, kernels::Exec exec) {
    const auto words = enumerate_words(spec, max_len);
    std::vector<std::vector<SpherePoint>> found(words.size());
    std::vector<char> nonreduced(words.size(), 0);

    kernels::for_each_index(words.size(), exec, [&](std::size_t k) {
        const auto& ew = words[k];
        if (ew.functional_only) return;
        if (!is_reduced(spec, ew.word)) {
            nonreduced[k] = 1;
            return;
        }
        try {
            for (const auto& r : fixed_points(word_map(spec, ew.word)))
                if (r.kind == FixedPointClass::repelling) found[k].push_back(r.location);
        } catch (const NumericalError& e) {
            throw e.with_context("word " + word_text(ew.word));
        }
    });

    JuliaApproximation out;
    out.method = CloudMethod::repelling;
    out.spec_hash = spec.hash();
    std::vector<SpherePoint> all;
    for (std::size_t k = 0; k < words.size(); ++k) {
        out.report.skipped_functional += words[k].functional_only ? 1 : 0;
        out.report.skipped_nonreduced += nonreduced[k] ? 1 : 0;
        all.insert(all.end(), found[k].begin(), found[k].end());
    }
    out.report.words_examined = words.size();
    out.cloud.points = dedupe(all, kCloudMergeTolerance);
    out.cloud.method_tag = to_string(CloudMethod::repelling);
    out.cloud.params = {{"max_word_len", max_len}, {"merge_tol", kCloudMergeTolerance}, {"spec_hash", out.spec_hash}};
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
}

std::string point_text(const SpherePoint& p) {
    if (p.is_infinite()) return "inf";
    return io::format_double(p.value().real()) + " " + io::format_double(p.value().imag());
}

}  // namespace

JuliaApproximation backward_orbit_cloud(const SemigroupSpec& spec, const SpherePoint& seed,
                                        std::size_t n_samples, std::size_t burn_in,
                                        std::uint64_t rng_seed, kernels::Exec exec) {
    if (n_samples < 1) throw InputError("backward_orbit_cloud: n_samples must be >= 1");

    JuliaApproximation out;
    out.method = CloudMethod::backward_orbit;
    out.spec_hash = spec.hash();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        std::vector<SpherePoint> e;
        try {
            e = exceptional_points(spec.generator(i));
        } catch (const InputError&) {
            continue;  // E undefined for non-loxodromic Möbius maps
        }
        for (const auto& x : e)
            if (chordal_dist(x, seed) <= 1e-9)
                out.report.warnings.push_back("seed lies in the exceptional set of generator " +
                                              spec.labels()[i]);
    }

    const std::size_t chunks = (n_samples + kWalkChunk - 1) / kWalkChunk;
    std::vector<SpherePoint> samples(n_samples);
    kernels::for_each_index(chunks, exec, [&](std::size_t k) {
        std::mt19937_64 rng(splitmix64(rng_seed ^ splitmix64(k)));
        const std::size_t begin = k * kWalkChunk;
        const std::size_t count = std::min(kWalkChunk, n_samples - begin);
        SpherePoint z = seed;
        for (std::size_t step = 0; step < burn_in + count; ++step) {
            const std::size_t g = pick(rng, spec.size());
            std::vector<SpherePoint> pre;
            try {
                pre = preimages(spec.generator(g), z);
            } catch (const NumericalError& e) {
                throw e.with_context("backward walk chunk " + std::to_string(k) + " step " +
                                     std::to_string(step) + " at " + point_text(z));
            }
            z = pre[pick(rng, pre.size())];
            if (step >= burn_in) samples[begin + step - burn_in] = z;
        }
    });

    out.cloud.points = std::move(samples);
    out.cloud.method_tag = to_string(CloudMethod::backward_orbit);
    out.cloud.params = {{"seed", io::point_to_json(seed)},
                        {"samples", n_samples},
                        {"burn_in", burn_in},
                        {"rng_seed", rng_seed},
                        {"chunk", kWalkChunk},
                        {"spec_hash", out.spec_hash}};
    return out;
}

double self_similarity_defect(const SemigroupSpec& spec, const PointCloud& cloud) {
    if (cloud.empty()) throw InputError("self_similarity_defect: empty cloud");
    std::vector<std::vector<SpherePoint>> pre(cloud.size());
    kernels::for_each_index(cloud.size(), kernels::Exec::parallel, [&](std::size_t k) {
        for (const auto& g : spec.generators()) {
            auto p = preimages(g, cloud.points[k]);
            pre[k].insert(pre[k].end(), p.begin(), p.end());
        }
    });
    std::vector<SpherePoint> image;
    for (auto& v : pre) image.insert(image.end(), v.begin(), v.end());
    return hausdorff_dist(std::span(cloud.points), std::span(image));
}

// ---------------------------------------------------------------- escape

namespace {

// For |z| >= rho:  |g(z)|/|z| >= rho^(n-m-1) L(rho)/U(rho) with
// L = |p_n| - sum_{k<n} |p_k| rho^(k-n),  U = sum_k |q_k| rho^(k-m).
bool tail_certified(const RationalMap& g, double rho) {
    const auto& p = g.num().coeffs();
    const auto& q = g.den().coeffs();
    const int n = g.num().degree(), m = g.den().degree();
    if (n <= m) return false;
    double lower = std::abs(p[static_cast<std::size_t>(n)]);
    for (int k = 0; k < n; ++k) lower -= std::abs(p[static_cast<std::size_t>(k)]) * std::pow(rho, k - n);
    double upper = 0.0;
    for (int k = 0; k <= m; ++k) upper += std::abs(q[static_cast<std::size_t>(k)]) * std::pow(rho, k - m);
    if (!(lower > 0.0)) return false;
    return std::pow(rho, n - m - 1) * lower > upper;
}

bool circle_expands(const RationalMap& g, double rho) {
    for (int j = 0; j < kEscapeCircleSamples; ++j) {
        const cplx z = std::polar(rho, 2.0 * std::numbers::pi * j / kEscapeCircleSamples);
        const SpherePoint w = g(z);
        if (w.is_finite() && !(std::abs(w.value()) > rho)) return false;
    }
    return true;
}

bool escapes_beyond(const RationalMap& g, double radius) {
    if (g.num().degree() <= g.den().degree()) return false;  // f(inf) != inf
    double rho = radius;
    for (int k = 0; k < 64; ++k, rho *= 2.0) {
        if (tail_certified(g, rho)) return true;
        if (!circle_expands(g, rho)) return false;
    }
    return false;
}

}  // namespace

std::optional<double> forward_invariant_escape_region(const SemigroupSpec& spec, double r_max) {
    if (!(r_max > 1.0)) throw InputError("forward_invariant_escape_region: R_max must exceed 1");
    for (double r = 2.0; r <= r_max; r += 1.0) {
        const bool all = std::all_of(spec.generators().begin(), spec.generators().end(),
                                     [&](const RationalMap& g) { return escapes_beyond(g, r); });
        if (all) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- raster

Raster render_cloud(const PointCloud& cloud, const Window& win, int width, int height) {
    if (width <= 0 || height <= 0) throw InputError("render_cloud: dimensions must be positive");
    if (!(win.xmax > win.xmin) || !(win.ymax > win.ymin) || !std::isfinite(win.xmax - win.xmin) ||
        !std::isfinite(win.ymax - win.ymin))
        throw InputError("render_cloud: degenerate window");

    Raster r;
    r.width = width;
    r.height = height;
    std::vector<std::size_t> hits(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (const auto& p : cloud.points) {
        if (p.is_infinite()) {
            ++r.dropped;
            continue;
        }
        const cplx z = p.value();
        if (z.real() < win.xmin || z.real() > win.xmax || z.imag() < win.ymin || z.imag() > win.ymax) {
            ++r.dropped;
            continue;
        }
        const int col = std::min(width - 1, static_cast<int>((z.real() - win.xmin) / (win.xmax - win.xmin) * width));
        const int row = std::min(height - 1, static_cast<int>((win.ymax - z.imag()) / (win.ymax - win.ymin) * height));
        ++hits[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)];
    }
    const std::size_t top = hits.empty() ? 0 : *std::max_element(hits.begin(), hits.end());
    r.pixels.assign(hits.size(), 0);
    if (top > 0) {
        const double norm = std::log1p(static_cast<double>(top));
        for (std::size_t k = 0; k < hits.size(); ++k)
            if (hits[k] > 0)
                r.pixels[k] = static_cast<std::uint8_t>(
                    std::max(1.0, std::round(255.0 * std::log1p(static_cast<double>(hits[k])) / norm)));
    }
    return r;
}

void write_pgm(std::ostream& out, const Raster& r) {
    out << "P5\n" << r.width << ' ' << r.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(r.pixels.data()), static_cast<std::streamsize>(r.pixels.size()));
}

}  // namespace rsg
