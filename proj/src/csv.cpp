#include "hetbo/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hetbo/errors.hpp"

namespace hetbo {

namespace {

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(trimmed(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, int line_number) {
    if (cell.empty()) throw MalformedRowError("blank cell", line_number);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw MalformedRowError("non-numeric cell '" + cell + "'", line_number);
    if (!std::isfinite(value))
        throw MalformedRowError("non-finite cell '" + cell + "'", line_number);
    return value;
}

} // namespace

Dataset read_xy_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw FileNotFoundError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(file, line))
        throw InsufficientDataError("'" + path + "' is empty");
    const std::size_t columns = split_cells(line).size();
    if (columns < 2)
        throw MalformedRowError("need at least two columns", 1);

    std::vector<std::vector<double>> rows;
    int line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        if (trimmed(line).empty()) continue;
        const std::vector<std::string> cells = split_cells(line);
        if (cells.size() != columns)
            throw MalformedRowError("expected " + std::to_string(columns) + " cells, found " +
                                        std::to_string(cells.size()),
                                    line_number);
        std::vector<double> row;
        row.reserve(columns);
        for (const std::string& cell : cells) row.push_back(parse_cell(cell, line_number));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InsufficientDataError("'" + path + "' has no data rows");

    Dataset data;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(columns - 1);
    data.inputs.resize(n, d);
    data.targets.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j)
            data.inputs(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        data.targets[i] = rows[static_cast<std::size_t>(i)][columns - 1];
    }
    return data;
}

void write_xy_csv(const std::string& path, const Dataset& data,
                  const std::vector<std::string>& column_names) {
    if (static_cast<Eigen::Index>(column_names.size()) != data.dimension() + 1)
        throw ConfigError("write_xy_csv: need one column name per input plus the target");
    std::ofstream file(path);
    if (!file) throw FileNotFoundError("cannot write '" + path + "'");

    for (std::size_t j = 0; j < column_names.size(); ++j)
        file << (j == 0 ? "" : ",") << column_names[j];
    file << "\n";

    char buffer[40];
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index j = 0; j < data.dimension(); ++j) {
            std::snprintf(buffer, sizeof buffer, "%.17g", data.inputs(i, j));
            file << buffer << ",";
        }
        std::snprintf(buffer, sizeof buffer, "%.17g", data.targets[i]);
        file << buffer << "\n";
    }
}

} // namespace hetbo
