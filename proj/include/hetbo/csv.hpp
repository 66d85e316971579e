#pragma once

#include <string>
#include <vector>

#include "hetbo/dataset.hpp"

namespace hetbo {

/// Reads a numeric CSV with a header line: every column but the last is an
/// input coordinate, the last is the target. Throws FileNotFoundError,
/// MalformedRowError (1-based physical line, header included) on blank or
/// non-numeric cells or ragged rows, and InsufficientDataError when no data
/// rows remain.
Dataset read_xy_csv(const std::string& path);

/// Writes `data` with the given column names; floats carry full precision.
void write_xy_csv(const std::string& path, const Dataset& data,
                  const std::vector<std::string>& column_names);

} // namespace hetbo
