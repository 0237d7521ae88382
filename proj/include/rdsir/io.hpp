#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rdsir/diagnostics.hpp"
#include "rdsir/grid.hpp"

namespace rdsir {

/// %.17g: 17 significant digits, round-trips every double.
std::string format_double(double v);

inline constexpr const char* kSeriesHeader =
    "t,total_mass,infected_fraction,noncompliant_fraction,min_value,bound_gap";

/// series.csv: header row, then one row per record.
void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRecord>& series);
std::vector<SeriesRecord> read_series_csv(const std::filesystem::path& path);

/**
 * Snapshot CSV, row-major:
 *   line 1: "# nx=..,ny=..,xmin=..,xmax=..,ymin=..,ymax=..,t=..,field=.."
 *   line 2: "x=<x_0>,x=<x_1>,..." cell-center abscissae
 *   then ny rows (j = 0 is the y = ymin row) of nx comma-separated values.
 */
void write_snapshot_csv(const std::filesystem::path& path, const ScalarField& f, double time,
                        const std::string& field_name);

struct Snapshot {
  ScalarField field;
  double time{0.0};
  std::string name;
};
Snapshot read_snapshot_csv(const std::filesystem::path& path);

}  // namespace rdsir
