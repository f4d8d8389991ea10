#include "condlab/validation_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "condlab/errors.hpp"

namespace condlab::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("bad numeric field: " + s);
  return v;
}

std::size_t parse_count(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("bad count field: " + s);
  return v;
}

void check_id(const std::string& s) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw ConfigError("identifier contains a separator: " + s);
  }
}

}  // namespace

const std::vector<std::string>& columns(Table table) {
  static const std::vector<std::string> validation = {
      "instance_id", "measure", "nu",          "center_id", "cond_center",
      "mean",        "stderr",  "n",           "censored",  "p99",
      "bound_name",  "bound_value", "margin",  "verdict"};
  static const std::vector<std::string> estimate(validation.begin(), validation.begin() + 10);
  return table == Table::kValidation ? validation : estimate;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_rows(std::ostream& out, const std::vector<mc::ValidationRow>& rows, Table table) {
  const auto& cols = columns(table);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    check_id(r.instance_id);
    check_id(r.center_id);
    out << r.instance_id << ',' << r.measure << ',' << format_double(r.nu) << ','
        << r.center_id << ',' << format_double(r.cond_center) << ','
        << format_double(r.estimate.mean) << ',' << format_double(r.estimate.std_error) << ','
        << r.estimate.n << ',' << r.estimate.censored << ',' << format_double(r.estimate.p99)
;
    if (table == Table::kValidation) {
      out << ',' << r.bound_name << ',' << format_double(r.bound_value) << ','
          << format_double(r.margin) << ',' << mc::to_string(r.verdict);
    }
    out << '\n';
  }
}

std::vector<mc::ValidationRow> read_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty validation table");
  const auto header = split(line);
  Table table = Table::kValidation;
  if (header == columns(Table::kEstimate)) {
    table = Table::kEstimate;
  } else if (header != columns(Table::kValidation)) {
    throw ConfigError("unexpected table header: " + line);
  }
  const std::size_t width = columns(table).size();
  std::vector<mc::ValidationRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != width) throw ConfigError("wrong field count: " + line);
    mc::ValidationRow r;
    r.instance_id = f[0];
    r.measure = f[1];
    r.nu = parse_double(f[2]);
    r.center_id = f[3];
    r.cond_center = parse_double(f[4]);
    r.estimate.mean = parse_double(f[5]);
    r.estimate.std_error = parse_double(f[6]);
    r.estimate.n = parse_count(f[7]);
    r.estimate.censored = parse_count(f[8]);
    r.estimate.p99 = parse_double(f[9]);
    if (table == Table::kEstimate) {
      rows.push_back(std::move(r));
      continue;
    }
    r.bound_name = f[10];
    r.bound_value = parse_double(f[11]);
    r.margin = parse_double(f[12]);
    const auto v = mc::parse_verdict(f[13]);
    if (!v) throw ConfigError("unknown verdict: " + f[13]);
    r.verdict = *v;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace condlab::csv
