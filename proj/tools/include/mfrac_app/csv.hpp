#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mfrac/covariance.hpp"
#include "mfrac/series.hpp"

namespace mfrac::app {

/// Shortest text that reads back to the same double ("%.17g" precision or less).
std::string format_double(double v);

/// `t,x` header and one row per sample.
std::string write_series_csv(const TimeSeries& x);

/// Parses a `t,x` CSV. Errors name the source, line and column.
TimeSeries read_series_csv(std::string_view text, std::string_view source = "<input>");

/// Single-column price list with a header row (an extra `t` column is ignored
/// when the header is `t,x`).
std::vector<double> read_price_csv(std::string_view text, std::string_view source = "<input>");

/// Header row `t,<grid...>`, then `<t_i>,<row i>`.
std::string write_matrix_csv(const CovMatrix& c);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Every *.csv file in `dir`, sorted by file name.
std::vector<std::filesystem::path> csv_files_in(const std::filesystem::path& dir);

}  // namespace mfrac::app
