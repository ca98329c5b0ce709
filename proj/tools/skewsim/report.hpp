#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace skewsim {

using Json = nlohmann::ordered_json;

/// One gate of an experiment.
struct Check {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> target;
  std::optional<double> bound;
  bool pass = false;
};

/// Everything an experiment reports. Checks drive the exit code; the table,
/// when present, replaces the summary in CSV output.
struct Report {
  std::string experiment;
  Json parameters = Json::object();
  std::vector<Check> checks;
  Json details = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool pass() const;
};

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

void write_json(const Report& r, std::ostream& out);
void write_csv(const Report& r, std::ostream& out);

}  // namespace skewsim
