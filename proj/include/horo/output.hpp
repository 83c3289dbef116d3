#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "horo/dynamics.hpp"
#include "horo/horolab.hpp"
#include "horo/reports.hpp"
#include "json.hpp"

namespace horo {

using Json = nlohmann::ordered_json;

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);
// Non-finite values become the strings above.
Json number_value(double v);

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string to_csv(const Table& t);
// Array of row objects keyed by column name.
Json to_json(const Table& t);
std::string dump_json(const Json& j);

// Writes through a temporary file in the same directory and renames it over
// path; "-" or an empty path writes to standard output.
void write_output(const std::string& path, const std::string& content);

Table petersen_table(const PetersenReport& r);
Json petersen_json(const PetersenReport& r);
Table comb_table(const CombReport& r);
Json comb_json(const CombReport& r);

// Columns n, re, im, step_distance.
Table orbit_table(const OrbitRecord& o);
Json orbit_json(const OrbitRecord& o);

// Columns level, re, im.
Table witness_table(const ClusterEstimate& c);
Json cluster_summary_json(const ClusterEstimate& c);

}  // namespace horo
