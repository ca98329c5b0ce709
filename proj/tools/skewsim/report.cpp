#include "report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace skewsim {
namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json check_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["estimate"] = number(c.estimate);
  j["stderr"] = number(c.std_error);
  if (c.target) j["target"] = number(*c.target);
  if (c.bound) j["bound"] = number(*c.bound);
  j["pass"] = c.pass;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_json(const Report& r, std::ostream& out) {
  Json j;
  j["experiment"] = r.experiment;
  j["parameters"] = r.parameters;
  if (!r.checks.empty()) {
    const Check& head = r.checks.front();
    j["estimate"] = number(head.estimate);
    j["stderr"] = number(head.std_error);
    if (head.target) j["target"] = number(*head.target);
    if (head.bound) j["bound"] = number(*head.bound);
  }
  j["pass"] = r.pass();
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  j["checks"] = checks;
  if (!r.details.empty()) j["details"] = r.details;
  if (!r.columns.empty()) {
    Json table = Json::object();
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      Json column = Json::array();
      for (const auto& row : r.rows) column.push_back(number(row[c]));
      table[r.columns[c]] = column;
    }
    j["table"] = table;
  }
  out << j.dump(2) << '\n';
}

void write_csv(const Report& r, std::ostream& out) {
  if (!r.columns.empty()) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      out << (c ? "," : "") << csv_field(r.columns[c]);
    }
    out << "\r\n";
    for (const auto& row : r.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
      out << "\r\n";
    }
    return;
  }
  out << "experiment,check,estimate,stderr,target,bound,pass\r\n";
  for (const auto& c : r.checks) {
    out << csv_field(r.experiment) << ',' << csv_field(c.name) << ',' << format_double(c.estimate)
        << ',' << format_double(c.std_error) << ',' << optional_cell(c.target) << ','
        << optional_cell(c.bound) << ',' << (c.pass ? "true" : "false") << "\r\n";
  }
}

}  // namespace skewsim
