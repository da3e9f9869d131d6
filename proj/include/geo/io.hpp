#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geo/measure.hpp"
#include "geo/point.hpp"

namespace geo {

/// Shortest 17-significant-digit decimal form; round-trips to the same
/// double on re-read.
std::string format_double(double v);

/// Parses point-cloud text: one point per line, whitespace- or
/// comma-separated reals, column count = dimension. Lines starting with
/// '#' are comments. Throws InputError naming the offending line, e.g.
/// "line 3: invalid number".
std::vector<Point> parse_points(const std::string& text);

std::vector<Point> load_points(const std::string& path);

/// One CSV row of pre-formatted cells.
using CsvRow = std::vector<std::string>;

/// Writes comment lines ('# ...'), then a header row, then data rows.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const CsvRow& header, const std::vector<CsvRow>& rows);

/// Measure CSV: header comment carries total mass and seed; columns
/// x1..xd, mass.
void write_measure_csv(const std::string& path, const DiscreteMeasure& measure,
                       std::uint64_t seed);

DiscreteMeasure read_measure_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace geo
