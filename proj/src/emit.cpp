#include "critpt/emit.hpp"

#include <cstdio>
#include <sstream>

namespace critpt {

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw numeric_error("unknown output format: " + name);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string cell_to_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_table(const std::vector<Json>& rows, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(r);
    return arr.dump(2) + "\n";
  }

  std::vector<std::string> cols;
  if (!rows.empty())
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) cols.push_back(it.key());

  std::ostringstream out;
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << ",";
      out << csv_escape(cols[c]);
    }
    out << "\r\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out << ",";
        if (row.contains(cols[c])) out << csv_escape(cell_to_string(row.at(cols[c])));
      }
      out << "\r\n";
    }
    return out.str();
  }

  // aligned text table
  std::vector<std::size_t> widths(cols.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < cols.size(); ++c) widths[c] = cols[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (row.contains(cols[c])) line[c] = cell_to_string(row.at(cols[c]));
      widths[c] = std::max(widths[c], line[c].size());
    }
    cells.push_back(std::move(line));
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out << "  ";
    out << cols[c] << std::string(widths[c] - cols[c].size(), ' ');
  }
  out << "\n";
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << "  ";
      out << line[c] << std::string(widths[c] - line[c].size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

Json mc_to_json(const MCEstimate& est) {
  Json j;
  j["mean"] = est.mean;
  j["std_error"] = est.std_error;
  j["n_samples"] = est.n_samples;
  j["n_rejected"] = est.n_rejected;
  j["seed"] = est.seed;
  return j;
}

Json laurent_to_json(const LaurentSeries& s) {
  Json j;
  j["top_degree"] = s.top_degree;
  Json coeffs = Json::array();
  for (int k = 0; k < s.truncation_order(); ++k) {
    const auto& c = s.coeffs[static_cast<std::size_t>(k)];
    Json jc;
    jc["power"] = s.top_degree - k;
    jc["exact"] = c.is_exact;
    if (c.is_exact)
      jc["coefficient"] = rat_str(c.exact);
    else {
      jc["coefficient"] = c.value;
      jc["std_error"] = c.std_error;
    }
    coeffs.push_back(jc);
  }
  j["coefficients"] = coeffs;
  return j;
}

std::string laurent_to_text(const LaurentSeries& s) {
  std::ostringstream out;
  for (int k = 0; k < s.truncation_order(); ++k) {
    const auto& c = s.coeffs[static_cast<std::size_t>(k)];
    const int power = s.top_degree - k;
    if (k) out << " + ";
    if (c.is_exact)
      out << "(" << rat_str(c.exact) << ")";
    else
      out << "(" << format_double(c.value) << " +- " << format_double(c.std_error) << ")";
    if (power == 1)
      out << "*N";
    else if (power != 0)
      out << "*N^" << power;
  }
  return out.str();
}

}  // namespace critpt
