#include "mptsc/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

namespace mptsc {

double mean(std::span<const double> values) {
    if (values.empty()) throw ValidationError("mean of an empty sequence");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<double> znormalize(std::span<const double> values) {
    if (values.empty()) throw ValidationError("cannot z-normalize an empty sequence");
    std::vector<double> out(values.size(), 0.0);
    const bool constant =
        std::all_of(values.begin(), values.end(), [first = values.front()](double v) { return v == first; });
    if (constant) return out;

    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    const double sd = std::sqrt(ss / static_cast<double>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mu) / sd;
    return out;
}

TimeSeries znormalize(const TimeSeries& s) { return TimeSeries(znormalize(s.values())); }

void ButterworthSpec::validate() const {
    if (order < 1) throw ValidationError("Butterworth order must be >= 1");
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
        throw ValidationError("Butterworth cutoff must lie in (0, 1) as a fraction of Nyquist");
    }
}

ButterworthFilter::ButterworthFilter(const ButterworthSpec& spec) : spec_(spec) {
    spec_.validate();
    using cplx = std::complex<double>;
    const int n = spec_.order;
    // Prewarped analog cutoff for a unit sample period.
    const double warped = 2.0 * std::tan(std::numbers::pi * spec_.cutoff / 2.0);
    auto to_digital = [](cplx p) { return (2.0 + p) / (2.0 - p); };

    for (int k = 1; k <= n / 2; ++k) {
        const double theta = std::numbers::pi * (2.0 * k + n - 1) / (2.0 * n);
        const cplx z = to_digital(warped * std::polar(1.0, theta));
        SecondOrderSection sec;
        sec.a = {1.0, -2.0 * z.real(), std::norm(z)};
        const double gain = (1.0 + sec.a[1] + sec.a[2]) / 4.0;
        sec.b = {gain, 2.0 * gain, gain};
        sections_.push_back(sec);
    }
    if (n % 2 == 1) {
        const double z = to_digital(cplx(-warped, 0.0)).real();
        SecondOrderSection sec;
        sec.a = {1.0, -z, 0.0};
        const double gain = (1.0 - z) / 2.0;
        sec.b = {gain, gain, 0.0};
        sections_.push_back(sec);
    }
}

double ButterworthFilter::magnitude(double w) const {
    const std::complex<double> zi = std::polar(1.0, -w);
    const auto zi2 = zi * zi;
    double mag = 1.0;
    for (const auto& s : sections_) {
        const auto num = s.b[0] + s.b[1] * zi + s.b[2] * zi2;
        const auto den = s.a[0] + s.a[1] * zi + s.a[2] * zi2;
        mag *= std::abs(num) / std::abs(den);
    }
    return mag;
}

std::vector<double> ButterworthFilter::apply_causal(std::span<const double> x) const {
    std::vector<double> y(x.begin(), x.end());
    if (y.empty()) return y;
    for (const auto& s : sections_) {
        // Every section has unit DC gain, so a steady input equal to the
        // first sample passes through each section unchanged.
        const double c = y.front();
        double z2 = (s.b[2] - s.a[2]) * c;
        double z1 = (s.b[1] - s.a[1]) * c + z2;
        for (double& v : y) {
            const double in = v;
            const double out = s.b[0] * in + z1;
            z1 = s.b[1] * in - s.a[1] * out + z2;
            z2 = s.b[2] * in - s.a[2] * out;
            v = out;
        }
    }
    return y;
}

TimeSeries ButterworthFilter::apply(const TimeSeries& s) const {
    const std::size_t n = s.size();
    const std::size_t min_len = 3 * static_cast<std::size_t>(spec_.order);
    if (n <= min_len) {
        throw ValidationError("series of length " + std::to_string(n) + " is too short for an order-" +
                              std::to_string(spec_.order) + " Butterworth filter (need > " +
                              std::to_string(min_len) + " samples)");
    }
    const auto x = s.values();
    if (!spec_.zero_phase) return TimeSeries(apply_causal(x));

    // Reflection long enough for the start-up transient to die out, capped by the series itself.
    const auto settle = static_cast<std::size_t>(std::ceil(2.0 * spec_.order / spec_.cutoff));
    const std::size_t pad = std::min(n - 1, std::max(min_len, settle));

    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    auto fwd = apply_causal(ext);
    std::reverse(fwd.begin(), fwd.end());
    auto bwd = apply_causal(fwd);
    std::reverse(bwd.begin(), bwd.end());
    return TimeSeries(std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                                          bwd.begin() + static_cast<std::ptrdiff_t>(pad + n)));
}

TimeSeries butterworth_filter(const TimeSeries& s, const ButterworthSpec& spec) {
    return ButterworthFilter(spec).apply(s);
}

std::vector<double> paa(std::span<const double> values, std::size_t target_length) {
    const std::size_t n = values.size();
    const std::size_t m = target_length;
    if (m < 1 || m > n) {
        throw ValidationError("PAA target length " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
    }
    if (m == n) return {values.begin(), values.end()};
    if (m == 1) return {mean(values)};

    // In units of 1/m sample widths: sample j covers [j*m, (j+1)*m) and
    // segment i covers [i*n, (i+1)*n).
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t seg_lo = i * n;
        const std::size_t seg_hi = (i + 1) * n;
        double acc = 0.0;
        for (std::size_t j = seg_lo / m; j * m < seg_hi; ++j) {
            const std::size_t lo = std::max(seg_lo, j * m);
            const std::size_t hi = std::min(seg_hi, (j + 1) * m);
            acc += static_cast<double>(hi - lo) * values[j];
        }
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

TimeSeries paa(const TimeSeries& s, std::size_t target_length) { return TimeSeries(paa(s.values(), target_length)); }

std::vector<double> resample_linear(std::span<const double> values, std::size_t target_length) {
    const std::size_t n = values.size();
    if (n < 2) throw ValidationError("linear resampling needs at least 2 samples");
    if (target_length < 2) throw ValidationError("linear resampling target length must be >= 2");
    if (target_length == n) return {values.begin(), values.end()};

    std::vector<double> out(target_length);
    const double span = static_cast<double>(n - 1);
    const double steps = static_cast<double>(target_length - 1);
    for (std::size_t i = 0; i < target_length; ++i) {
        const double pos = static_cast<double>(i) * span / steps;
        const auto j = std::min(static_cast<std::size_t>(pos), n - 2);
        const double frac = pos - static_cast<double>(j);
        out[i] = values[j] + frac * (values[j + 1] - values[j]);
    }
    out.front() = values.front();
    out.back() = values.back();
    return out;
}

TimeSeries resample_linear(const TimeSeries& s, std::size_t target_length) {
    return TimeSeries(resample_linear(s.values(), target_length));
}

}  // namespace mptsc
