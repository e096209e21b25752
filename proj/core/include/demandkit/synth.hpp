#pragma once

#include <cstdint>

#include "demandkit/timeseries.hpp"

namespace demandkit {

/// Parameters of the synthetic smelter dataset. The defaults give a load
/// around 30 MW with a shift-structured daily profile (night dip, steep
/// morning ramp, broad day plateau), a weekday/weekend split, day-to-day
/// production swings the demand tracks linearly, and a small Gaussian
/// measurement noise.
///
/// The deterministic part of each demand sample is
///   base + daily_amp * tanh(sharpness * sin(2*pi*(hour_frac - 0.30)))
///        + weekday_amp * weekday_shape[dow]
///        + quarter_amp * (quarter - 1.5) / 1.5
///        + sum over lines of kw_per_tmh * (rate - base_tmh)
/// with hour_frac = hour-of-day / 24.
struct SynthConfig {
    Timestamp start = Timestamp::civil(2007, 9, 1);  // midnight
    int days = 30;
    std::uint64_t seed = 42;

    double base_kw = 30000.0;
    double daily_amp_kw = 500.0;    // swing between the night dip and the day plateau
    double shape_sharpness = 3.0;   // higher = flatter plateau, steeper shift ramps
    double weekday_amp_kw = 600.0;  // scales the day-of-week offsets
    double quarter_amp_kw = 100.0;  // sawtooth across each hour's quarters

    double anodes_base_tmh = 35.0;
    double acid_base_tmh = 110.0;
    double oxygen_base_tmh = 50.0;
    double anodes_wobble_tmh = 3.0;  // day-to-day production variation
    double acid_wobble_tmh = 8.0;
    double oxygen_wobble_tmh = 4.0;
    double anodes_kw_per_tmh = 40.0;  // demand sensitivity to each line
    double acid_kw_per_tmh = 25.0;
    double oxygen_kw_per_tmh = 30.0;

    double noise_kw = 60.0;
};

struct SynthData {
    LoadSeries demand;           // 15-minute cadence, days * 96 samples
    ProductionSeries production;  // one row per day
};

/// Deterministic for a given configuration. The noise at an instant depends
/// only on the seed and the absolute time, so runs over different spans
/// agree wherever they overlap.
SynthData generate(const SynthConfig& config);

}  // namespace demandkit
