#include "mptsc/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mptsc/preprocess.hpp"

namespace mptsc {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const auto q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Inner-index range of outer index u in a U x V grid under |u*V - v*U| <= radius.
std::pair<std::int64_t, std::int64_t> inner_range(std::int64_t u, std::int64_t U, std::int64_t V,
                                                  std::int64_t radius) {
    const auto lo = std::max<std::int64_t>(1, ceil_div(u * V - radius, U));
    const auto hi = std::min<std::int64_t>(V, floor_div(u * V + radius, U));
    return {lo, hi};
}

bool radius_feasible(std::int64_t m, std::int64_t n, std::int64_t radius) {
    auto [lo, hi] = inner_range(1, m, n, radius);
    if (lo > 1 || hi < 1) return false;
    std::int64_t reach_lo = 1;
    std::int64_t reach_hi = hi;
    for (std::int64_t i = 2; i <= m; ++i) {
        std::tie(lo, hi) = inner_range(i, m, n, radius);
        const auto entry_lo = std::max(reach_lo, lo);
        const auto entry_hi = std::min(reach_hi + 1, hi);
        if (entry_lo > entry_hi) return false;
        reach_lo = entry_lo;
        reach_hi = hi;
    }
    return reach_hi == n;
}

}  // namespace

void DtwSpec::validate() const {
    if (!(band_fraction > 0.0 && band_fraction <= 1.0)) {
        throw ValidationError("DTW band_fraction must lie in (0, 1], got " + std::to_string(band_fraction));
    }
}

bool DtwBand::admits(std::size_t i, std::size_t j) const noexcept {
    if (i < 1 || j < 1 || i > m || j > n) return false;
    const auto dev = static_cast<std::int64_t>(i) * static_cast<std::int64_t>(n) -
                     static_cast<std::int64_t>(j) * static_cast<std::int64_t>(m);
    return (dev < 0 ? -dev : dev) <= radius;
}

std::pair<std::int64_t, std::int64_t> DtwBand::row_range(std::size_t i) const noexcept {
    return inner_range(static_cast<std::int64_t>(i), static_cast<std::int64_t>(m), static_cast<std::int64_t>(n),
                       radius);
}

std::int64_t dtw_min_feasible_radius(std::size_t m, std::size_t n) {
    const auto mm = static_cast<std::int64_t>(m);
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t lo = 0;
    std::int64_t hi = mm * nn;  // admits every cell
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (radius_feasible(mm, nn, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

DtwBand dtw_band(std::size_t m, std::size_t n, const DtwSpec& spec) {
    spec.validate();
    if (m == 0 || n == 0) throw ValidationError("DTW requires nonempty series");
    DtwBand band;
    band.m = m;
    band.n = n;
    const double r = spec.band_fraction * static_cast<double>(std::max(m, n)) * static_cast<double>(m);
    band.requested = static_cast<std::int64_t>(std::floor(r));
    band.radius = band.requested;
    if (!radius_feasible(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n), band.radius)) {
        band.radius = dtw_min_feasible_radius(m, n);
    }
    return band;
}

double dtw_distance(std::span<const double> q, std::span<const double> x, const DtwSpec& spec) {
    if (q.empty() || x.empty()) throw ValidationError("DTW requires nonempty series");
    const auto band = dtw_band(q.size(), x.size(), spec);

    // Walk the longer series in the outer loop so the row buffers have
    // length min(m, n). The admissible cell set is orientation independent.
    const bool transposed = x.size() > q.size();
    const auto outer = transposed ? x : q;
    const auto inner = transposed ? q : x;
    const auto U = static_cast<std::int64_t>(outer.size());
    const auto V = static_cast<std::int64_t>(inner.size());

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(static_cast<std::size_t>(V) + 1, inf);
    std::vector<double> cur(static_cast<std::size_t>(V) + 1, inf);
    std::int64_t prev_lo = 1;
    std::int64_t prev_hi = 0;

    for (std::int64_t u = 1; u <= U; ++u) {
        const auto [lo, hi] = inner_range(u, U, V, band.radius);
        const double a = outer[static_cast<std::size_t>(u - 1)];
        for (std::int64_t v = lo; v <= hi; ++v) {
            double best = inf;
            if (u == 1 && v == 1) {
                best = 0.0;
            } else {
                if (v >= prev_lo && v <= prev_hi) best = std::min(best, prev[static_cast<std::size_t>(v)]);
                if (v - 1 >= prev_lo && v - 1 <= prev_hi) {
                    best = std::min(best, prev[static_cast<std::size_t>(v - 1)]);
                }
                if (v - 1 >= lo) best = std::min(best, cur[static_cast<std::size_t>(v - 1)]);
            }
            const double d = a - inner[static_cast<std::size_t>(v - 1)];
            cur[static_cast<std::size_t>(v)] = best + d * d;
        }
        std::swap(prev, cur);
        prev_lo = lo;
        prev_hi = hi;
    }
    return std::sqrt(prev[static_cast<std::size_t>(V)]);
}

double dtw_distance(const TimeSeries& q, const TimeSeries& x, const DtwSpec& spec) {
    return dtw_distance(q.values(), x.values(), spec);
}

double euclidean_equal_length(std::span<const double> q, std::span<const double> x) {
    if (q.size() != x.size()) throw ValidationError("Euclidean distance needs equal-length inputs");
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double d = q[i] - x[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double euclidean_distance(std::span<const double> q, std::span<const double> x, std::size_t common_length) {
    if (common_length < 1) throw ValidationError("Euclidean common_length must be positive");
    auto fit = [common_length](std::span<const double> s) {
        if (s.size() == common_length) return std::vector<double>(s.begin(), s.end());
        return resample_linear(s, common_length);
    };
    return euclidean_equal_length(fit(q), fit(x));
}

double euclidean_distance(const TimeSeries& q, const TimeSeries& x, std::size_t common_length) {
    return euclidean_distance(q.values(), x.values(), common_length);
}

double mean_distance(const TimeSeries& q, const TimeSeries& x) {
    return std::abs(mean(q.values()) - mean(x.values()));
}

}  // namespace mptsc
