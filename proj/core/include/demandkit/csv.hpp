#pragma once

#include <filesystem>

#include "demandkit/timeseries.hpp"

namespace demandkit {

/// Reads a `timestamp,kw` CSV with minute-precision ISO-8601 timestamps.
/// The cadence (5 or 15 min) is inferred from the first two rows; any gap
/// or irregular step is rejected as a cadence violation.
LoadSeries load_csv(const std::filesystem::path& path);

/// Reads a `date,anodes_tmh,acid_tmh,oxygen_tmh` CSV of consecutive days.
ProductionSeries load_production_csv(const std::filesystem::path& path);

void save_csv(const LoadSeries& s, const std::filesystem::path& path);
void save_production_csv(const ProductionSeries& p, const std::filesystem::path& path);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace demandkit
