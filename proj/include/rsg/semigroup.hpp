#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rsg/kernels.hpp"
#include "rsg/rational.hpp"
#include "rsg/sphere.hpp"

namespace rsg {

// G = <g_0, ..., g_{n-1}>. In group mode every generator must be Möbius and
// the inverses are appended (skipping any already present), so the closed
// list generates the group as a semigroup.
class SemigroupSpec {
public:
    SemigroupSpec(std::vector<RationalMap> generators, bool group_mode = false,
                  int degree_cap = kDefaultDegreeCap, std::vector<std::string> labels = {});

    // Closed generator list; the first base_count() are the user's maps.
    const std::vector<RationalMap>& generators() const noexcept { return gens_; }
    const RationalMap& generator(std::size_t i) const { return gens_.at(i); }
    std::size_t size() const noexcept { return gens_.size(); }
    std::size_t base_count() const noexcept { return base_; }
    bool group_mode() const noexcept { return group_mode_; }
    int degree_cap() const noexcept { return cap_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    // Index j with g_j o g_i = id, when the closed list has one.
    std::optional<std::size_t> inverse_of(std::size_t i) const { return inverse_.at(i); }

    // FNV-1a digest of the canonical JSON form.
    std::string hash() const;

private:
    std::vector<RationalMap> gens_;
    std::size_t base_ = 0;
    bool group_mode_ = false;
    int cap_ = kDefaultDegreeCap;
    std::vector<std::string> labels_;
    std::vector<std::optional<std::size_t>> inverse_;
};

// Word (i_1, ..., i_m) denotes g_{i_1} o g_{i_2} o ... o g_{i_m}: the
// rightmost generator is applied first.
struct Word {
    std::vector<std::size_t> indices;
    friend bool operator==(const Word&, const Word&) = default;
};

struct EnumeratedWord {
    Word word;
    bool functional_only = false;  // composed degree exceeds the cap
};

// Product of generator degrees, saturating at LONG_MAX.
long word_degree(const SemigroupSpec& spec, const Word& w);

// No adjacent generator/inverse pair (always true outside group mode).
bool is_reduced(const SemigroupSpec& spec, const Word& w);

// Words of length 1..max_len, by length then lexicographically.
std::vector<EnumeratedWord> enumerate_words(const SemigroupSpec& spec, int max_len);

// Expanded composition; throws DegreeCapError past the cap.
RationalMap word_map(const SemigroupSpec& spec, const Word& w);

// Applies the word to a point without expanding it.
SpherePoint word_eval(const SemigroupSpec& spec, const Word& w, const SpherePoint& p);

enum class CloudMethod { repelling, backward_orbit };
const char* to_string(CloudMethod m) noexcept;

struct CloudReport {
    std::size_t words_examined = 0;
    std::size_t skipped_functional = 0;  // words over the degree cap
    std::size_t skipped_nonreduced = 0;  // group-mode words with g g^-1
    std::vector<std::string> warnings;
};

struct JuliaApproximation {
    PointCloud cloud;
    std::string spec_hash;
    CloudMethod method = CloudMethod::repelling;
    CloudReport report;
};

inline constexpr double kCloudMergeTolerance = 1e-10;

// Repelling fixed points of every word of length <= max_len, merged within
// kCloudMergeTolerance. Words over the degree cap are skipped and counted.
// In group mode non-reduced words are skipped too: they equal shorter words,
// and cancelling g o g^-1 numerically manufactures spurious fixed points.
JuliaApproximation repelling_cloud(const SemigroupSpec& spec, int max_len,
                                   kernels::Exec exec = kernels::Exec::parallel);

inline constexpr std::size_t kWalkChunk = 1024;

// Random backward walk. Samples are produced in chunks of kWalkChunk; chunk k
// runs its own walk from `seed` with `burn_in` discarded steps, driven by an
// RNG seeded from (rng_seed, k). The output is therefore independent of the
// thread count.
JuliaApproximation backward_orbit_cloud(const SemigroupSpec& spec, const SpherePoint& seed,
                                        std::size_t n_samples, std::size_t burn_in,
                                        std::uint64_t rng_seed,
                                        kernels::Exec exec = kernels::Exec::parallel);

// Hausdorff distance between the cloud and the union of its preimages under
// all generators. A small value is necessary, not sufficient, for the cloud
// to approximate J(G).
double self_similarity_defect(const SemigroupSpec& spec, const PointCloud& cloud);

inline constexpr int kEscapeCircleSamples = 4096;

// Smallest R in {2, 3, ..., R_max} such that |g(z)| > |z| for every
// generator and |z| >= R, checked on circles R, 2R, 4R, ... until a
// coefficient tail bound covers the rest. A result certifies a neighbourhood
// of infinity in the Fatou set.
std::optional<double> forward_invariant_escape_region(const SemigroupSpec& spec, double r_max);

struct Window {
    double xmin, xmax, ymin, ymax;
};

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, top row first
    std::size_t dropped = 0;           // infinity or outside the window

    std::uint8_t at(int col, int row) const {
        return pixels.at(static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                         static_cast<std::size_t>(col));
    }
};

// Hit counts per pixel, log-scaled to 0..255.
Raster render_cloud(const PointCloud& cloud, const Window& window, int width, int height);

// Binary 8-bit greymap (P5).
void write_pgm(std::ostream& out, const Raster& raster);

}  // namespace rsg
