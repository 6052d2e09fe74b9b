#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mptsc/series.hpp"

namespace mptsc {

/// splitmix64 step; used to expand seeds into generator state.
std::uint64_t splitmix64(std::uint64_t& state);

/// xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).
/// Fully specified arithmetic, so streams are identical on every platform.
class Xorshift64Star {
  public:
    using result_type = std::uint64_t;

    explicit Xorshift64Star(std::uint64_t seed);

    static constexpr result_type min() { return 1; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller (the cosine branch only).
    double normal();

  private:
    std::uint64_t state_;
};

/// Synthetic perimeter-scan build.
///
/// Each record's level is base_level + block offset + layer_trend * layer.
/// The scan carries `dips` Gaussian dips (the perimeter corners) whose centres
/// are jittered independently per record, plus white Gaussian noise.
struct GenSpec {
    int blocks = 27;
    int layers = 250;
    std::size_t base_length = 2000;
    double length_jitter = 0.1;  ///< series length uniform in base_length * (1 +/- jitter)

    double base_level = 1000.0;
    /// Per-block level offsets, cycled over block ids. When empty the offset is
    /// wind_gradient * (block % grid_columns), a cooling gradient along the gas flow.
    std::vector<double> block_offsets;
    double wind_gradient = 0.0;
    int grid_columns = 9;
    double layer_trend = 0.0;

    int dips = 4;
    /// Dip depth per block, cycled over block ids.
    std::vector<double> dip_depths = {150.0};
    double dip_width = 0.01;         ///< Gaussian sigma as a fraction of the series length
    double dip_phase_jitter = 0.03;  ///< max |shift| of each dip centre, fraction of the length
    /// Raise the level by the expected dip mass so the series mean does not depend on dip depth.
    bool equalize_means = false;

    double noise_sd = 10.0;
    std::uint64_t seed = 42;

    void validate() const;
    double block_offset(int block) const;
    double dip_depth(int block) const;
};

/// Deterministic given the spec: records are ordered by block then layer and
/// each record draws from its own stream seeded by (seed, block, layer).
LabeledDataset generate(const GenSpec& spec);

}  // namespace mptsc
