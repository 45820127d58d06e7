#include "consensus/report.hpp"

#include <cmath>

#include "parse_util.hpp"

namespace consensus {

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos)
    return std::string(s);
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_number(double v) {
  // inf can show up for blown-up finite-time runs; keep it greppable.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return detail::format_double(v);
}

}  // namespace

std::string to_csv_row(const EvalReport& r) {
  std::string row = csv_field(r.graph_id);
  row += ",";
  row += csv_field(r.method);
  row += ",";
  row += csv_field(r.dist);
  row += ",";
  row += std::to_string(r.horizon);
  row += ",";
  row += std::to_string(r.eval_time);
  row += ",";
  row += std::to_string(r.n_samples);
  row += ",";
  row += csv_number(r.epsilon);
  row += ",";
  row += csv_number(r.std_error);
  row += ",";
  if (r.r_asym) row += csv_number(*r.r_asym);
  row += ",";
  row += std::to_string(r.seed);
  return row;
}

std::string to_csv_row(const EvalReport& r, std::string_view error) {
  return to_csv_row(r) + "," + csv_field(error);
}

}  // namespace consensus
