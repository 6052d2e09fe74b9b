#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mptsc/series.hpp"

namespace mptsc {

/// Sakoe-Chiba constraint. The half-width is `band_fraction * max(m, n)`,
/// measured along the stretched diagonal j = i * n / m.
struct DtwSpec {
    double band_fraction = 1.0;

    void validate() const;
    bool operator==(const DtwSpec&) const = default;
};

/// Integer form of the band for an m x n grid (1-based cells).
///
/// Cell (i, j) is admissible iff |i*n - j*m| <= radius. This is the same
/// condition as |i*(n/m) - j| <= r with radius = floor(r*m), kept in integers
/// so the admissible set is exact.
struct DtwBand {
    std::size_t m = 0;
    std::size_t n = 0;
    std::int64_t requested = 0;  ///< floor(band_fraction * max(m,n) * m)
    std::int64_t radius = 0;     ///< max(requested, feasibility minimum)

    bool widened() const noexcept { return radius > requested; }
    bool admits(std::size_t i, std::size_t j) const noexcept;
    /// Admissible column range [lo, hi] of row i, clipped to [1, n]; lo > hi when empty.
    std::pair<std::int64_t, std::int64_t> row_range(std::size_t i) const noexcept;
};

/// Smallest integer radius admitting a monotone path from (1,1) to (m,n).
std::int64_t dtw_min_feasible_radius(std::size_t m, std::size_t n);

DtwBand dtw_band(std::size_t m, std::size_t n, const DtwSpec& spec);

/// DTW per the squared-local-cost form: sqrt of the minimal summed (q_i - x_j)^2
/// over monotone paths with steps (1,0), (0,1), (1,1) inside the band. Uses
/// two rows of length min(m, n); work is proportional to the band area.
double dtw_distance(std::span<const double> q, std::span<const double> x, const DtwSpec& spec);
double dtw_distance(const TimeSeries& q, const TimeSeries& x, const DtwSpec& spec);

/// Euclidean distance after resampling both inputs to `common_length`
/// (inputs already of that length are used as-is).
double euclidean_distance(std::span<const double> q, std::span<const double> x, std::size_t common_length);
double euclidean_distance(const TimeSeries& q, const TimeSeries& x, std::size_t common_length);

/// Plain Euclidean distance of two equal-length sequences.
double euclidean_equal_length(std::span<const double> q, std::span<const double> x);

double mean_distance(const TimeSeries& q, const TimeSeries& x);

}  // namespace mptsc
