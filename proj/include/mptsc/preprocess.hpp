#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mptsc/series.hpp"

namespace mptsc {

/// Mean-zero, unit (population) standard deviation copy of `values`.
/// An exactly constant input maps to all zeros.
std::vector<double> znormalize(std::span<const double> values);
TimeSeries znormalize(const TimeSeries& s);

struct ButterworthSpec {
    int order = 4;
    double cutoff = 0.05;  ///< fraction of Nyquist, in (0, 1)
    bool zero_phase = true;

    void validate() const;
};

/// One biquad in transposed direct form II. a0 is normalized to 1.
struct SecondOrderSection {
    std::array<double, 3> b{};
    std::array<double, 3> a{1.0, 0.0, 0.0};
};

/// Low-pass Butterworth design: analog prototype poles, prewarped bilinear
/// transform, grouped into cascaded sections each with unit DC gain.
class ButterworthFilter {
  public:
    explicit ButterworthFilter(const ButterworthSpec& spec);

    const ButterworthSpec& spec() const noexcept { return spec_; }
    const std::vector<SecondOrderSection>& sections() const noexcept { return sections_; }

    /// |H(e^{jw})| of the single-pass filter, `w` in radians/sample.
    double magnitude(double w) const;

    /// Single causal pass with steady-state initial conditions scaled by the first sample.
    std::vector<double> apply_causal(std::span<const double> x) const;

    /// Filters `s`; forward-backward with odd reflection padding when zero_phase is set.
    TimeSeries apply(const TimeSeries& s) const;

  private:
    ButterworthSpec spec_;
    std::vector<SecondOrderSection> sections_;
};

TimeSeries butterworth_filter(const TimeSeries& s, const ButterworthSpec& spec);

/// Piecewise Aggregate Approximation to `target_length` segments. When the
/// length is not divisible, samples straddling a segment edge contribute
/// proportionally to both segments.
std::vector<double> paa(std::span<const double> values, std::size_t target_length);
TimeSeries paa(const TimeSeries& s, std::size_t target_length);

/// Linear interpolation onto `target_length` evenly spaced points; endpoints are kept exactly.
std::vector<double> resample_linear(std::span<const double> values, std::size_t target_length);
TimeSeries resample_linear(const TimeSeries& s, std::size_t target_length);

double mean(std::span<const double> values);

}  // namespace mptsc
