#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "critpt/gauss_integrals.hpp"
#include "critpt/laurent.hpp"

namespace critpt {

using Json = nlohmann::ordered_json;

enum class OutputFormat { table, csv, json };

OutputFormat parse_format(const std::string& name);

// Rows share a schema taken from the first row. CSV is RFC-4180-style with a
// header row; JSON is an array of objects with stable field names; the table
// format is aligned for reading.
std::string emit_table(const std::vector<Json>& rows, OutputFormat format);

// full-precision decimal form of a double (round-trips exactly)
std::string format_double(double v);

Json mc_to_json(const MCEstimate& est);
Json laurent_to_json(const LaurentSeries& s);
std::string laurent_to_text(const LaurentSeries& s);

}  // namespace critpt
