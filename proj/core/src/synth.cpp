#include "demandkit/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace demandkit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Uniform in [-1, 1] keyed by (seed, counter, salt).
double keyed_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t salt) {
    return 2.0 * to_unit(splitmix64(seed ^ splitmix64(counter ^ salt))) - 1.0;
}

/// Standard normal keyed by (seed, counter): Box-Muller over two hashes.
double keyed_gauss(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t key = seed ^ splitmix64(counter);
    double u1 = to_unit(splitmix64(key));
    const double u2 = to_unit(splitmix64(key ^ 0xdeadbeefcafef00dULL));
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Relative demand offset per weekday, Monday first. Weekends run lighter.
constexpr double kWeekdayShape[7] = {0.30, 0.35, 0.33, 0.30, 0.28, -0.70, -1.00};

}  // namespace

SynthData generate(const SynthConfig& config) {
    if (!config.start.is_midnight())
        throw std::invalid_argument("synthetic series must start at midnight");
    if (config.days < 1) throw std::invalid_argument("days must be at least 1");
    if (config.base_kw <= 0.0) throw std::invalid_argument("base_kw must be positive");

    const std::size_t days = static_cast<std::size_t>(config.days);
    std::vector<double> anodes(days), acid(days), oxygen(days);
    for (std::size_t d = 0; d < days; ++d) {
        // Key production on the absolute day so overlapping spans agree.
        const std::uint64_t day_key =
            static_cast<std::uint64_t>(config.start.plus_days(static_cast<std::int64_t>(d))
                                           .minutes_since_epoch() / 1440);
        anodes[d] = config.anodes_base_tmh +
                    config.anodes_wobble_tmh * keyed_uniform(config.seed, day_key, 0xa1);
        acid[d] = config.acid_base_tmh +
                  config.acid_wobble_tmh * keyed_uniform(config.seed, day_key, 0xb2);
        oxygen[d] = config.oxygen_base_tmh +
                    config.oxygen_wobble_tmh * keyed_uniform(config.seed, day_key, 0xc3);
        if (anodes[d] < 0.0) anodes[d] = 0.0;
        if (acid[d] < 0.0) acid[d] = 0.0;
        if (oxygen[d] < 0.0) oxygen[d] = 0.0;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> demand;
    demand.reserve(days * 96);
    for (std::size_t k = 0; k < days * 96; ++k) {
        const Timestamp t = config.start.plus_minutes(static_cast<std::int64_t>(k) * 15);
        const double hour_frac = (t.hour() + t.minute() / 60.0) / 24.0;
        const std::size_t d = k / 96;

        double v = config.base_kw;
        // Daily shift profile: tanh squashes the sinusoid into a night dip
        // and a broad working-hours plateau.
        v += config.daily_amp_kw *
             std::tanh(config.shape_sharpness * std::sin(two_pi * (hour_frac - 0.30)));
        v += config.weekday_amp_kw * kWeekdayShape[t.weekday_monday0()];
        // Sawtooth over the four quarters of each hour, centred on zero.
        v += config.quarter_amp_kw * ((t.minute() / 15) - 1.5) / 1.5;
        v += config.anodes_kw_per_tmh * (anodes[d] - config.anodes_base_tmh);
        v += config.acid_kw_per_tmh * (acid[d] - config.acid_base_tmh);
        v += config.oxygen_kw_per_tmh * (oxygen[d] - config.oxygen_base_tmh);
        v += config.noise_kw *
             keyed_gauss(config.seed, static_cast<std::uint64_t>(t.minutes_since_epoch()));
        demand.push_back(v > 0.0 ? v : 0.0);
    }

    return SynthData{LoadSeries(config.start, 15, std::move(demand)),
                     ProductionSeries(config.start, std::move(anodes), std::move(acid),
                                      std::move(oxygen))};
}

}  // namespace demandkit
