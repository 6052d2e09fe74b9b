#include "mptsc/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mptsc {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64(s);
    if (state_ == 0) state_ = 0x2545F4914F6CDD1DULL;
}

Xorshift64Star::result_type Xorshift64Star::operator()() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Xorshift64Star::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void GenSpec::validate() const {
    if (blocks < 1 || layers < 1) throw ValidationError("generator needs positive block and layer counts");
    if (base_length < 8) throw ValidationError("generator base_length must be >= 8");
    if (!(length_jitter >= 0.0 && length_jitter <= 0.5)) {
        throw ValidationError("generator length_jitter must lie in [0, 0.5]");
    }
    if (dips < 0) throw ValidationError("generator dip count must be nonnegative");
    if (dips > 0 && dip_depths.empty()) throw ValidationError("generator needs at least one dip depth");
    if (!(dip_width > 0.0)) throw ValidationError("generator dip_width must be positive");
    if (!(dip_phase_jitter >= 0.0)) throw ValidationError("generator dip_phase_jitter must be nonnegative");
    if (!(noise_sd >= 0.0)) throw ValidationError("generator noise_sd must be nonnegative");
    if (grid_columns < 1) throw ValidationError("generator grid_columns must be positive");
}

double GenSpec::block_offset(int block) const {
    if (!block_offsets.empty()) return block_offsets[static_cast<std::size_t>(block) % block_offsets.size()];
    return wind_gradient * static_cast<double>(block % grid_columns);
}

double GenSpec::dip_depth(int block) const {
    if (dip_depths.empty()) return 0.0;
    return dip_depths[static_cast<std::size_t>(block) % dip_depths.size()];
}

LabeledDataset generate(const GenSpec& spec) {
    spec.validate();
    std::vector<SeriesRecord> records;
    records.reserve(static_cast<std::size_t>(spec.blocks) * static_cast<std::size_t>(spec.layers));
    const double dip_mass = static_cast<double>(spec.dips) * spec.dip_width * std::sqrt(2.0 * std::numbers::pi);

    for (int block = 0; block < spec.blocks; ++block) {
        const double depth = spec.dip_depth(block);
        for (int layer = 0; layer < spec.layers; ++layer) {
            const auto key = (static_cast<std::uint64_t>(block) << 32) | static_cast<std::uint32_t>(layer);
            Xorshift64Star rng(spec.seed ^ (0x9E3779B97F4A7C15ULL * (key + 1)));

            const double scale = 1.0 + rng.uniform(-spec.length_jitter, spec.length_jitter);
            const auto length = static_cast<std::size_t>(
                std::max(8.0, std::round(static_cast<double>(spec.base_length) * scale)));

            double level = spec.base_level + spec.block_offset(block) + spec.layer_trend * layer;
            if (spec.equalize_means) level += depth * dip_mass;

            std::vector<double> centres;
            for (int d = 0; d < spec.dips; ++d) {
                const double nominal = (d + 0.5) / spec.dips;
                centres.push_back(nominal + rng.uniform(-spec.dip_phase_jitter, spec.dip_phase_jitter));
            }

            std::vector<double> values(length);
            for (std::size_t t = 0; t < length; ++t) {
                const double u = static_cast<double>(t) / static_cast<double>(length);
                double v = level;
                for (double c : centres) {
                    const double z = (u - c) / spec.dip_width;
                    v -= depth * std::exp(-0.5 * z * z);
                }
                values[t] = v + spec.noise_sd * rng.normal();
            }
            records.push_back(SeriesRecord{TimeSeries(std::move(values)), "blk" + std::to_string(block), block, layer});
        }
    }
    return LabeledDataset(std::move(records));
}

}  // namespace mptsc
