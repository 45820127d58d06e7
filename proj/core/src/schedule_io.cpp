#include "consensus/schedule_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parse_util.hpp"

namespace consensus {

using detail::format_double;
using detail::next_line;
using detail::parse_double_field;
using detail::parse_int_field;
using detail::split_fields;

namespace {

constexpr std::string_view kScheduleMagic = "consensus-schedule v1";
constexpr std::string_view kPlanMagic = "consensus-finite-plan v1";

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot open " + path.string());
  out << text;
  if (!out) raise(Errc::io_error, "write failed for " + path.string());
}

}  // namespace

std::string serialize_schedule(const WeightSchedule& schedule) {
  std::string out(kScheduleMagic);
  if (schedule.allow_negative()) out += " signed";
  out += "\n";
  out += std::to_string(schedule.graph().node_count()) + " " +
         std::to_string(schedule.horizon()) + " " +
         std::to_string(schedule.graph().edge_count()) + "\n";
  for (const Edge& e : schedule.graph().edges())
    out += std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  for (int k = 0; k < schedule.horizon(); ++k) {
    const auto row = schedule.row(k);
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (e > 0) out += " ";
      out += format_double(row[e]);
    }
    out += "\n";
  }
  return out;
}

WeightSchedule parse_schedule(std::string_view text) {
  std::string_view line;
  if (!next_line(text, line))
    raise(Errc::malformed_schedule, "schedule: empty input");
  bool signed_weights = false;
  if (line == kScheduleMagic) {
    signed_weights = false;
  } else if (line.starts_with(kScheduleMagic) &&
             line.substr(kScheduleMagic.size()) == " signed") {
    signed_weights = true;
  } else {
    raise(Errc::malformed_schedule,
          "schedule: bad header '" + std::string(line) + "'");
  }

  if (!next_line(text, line))
    raise(Errc::malformed_schedule, "schedule: missing 'N T M' line");
  const auto dims = split_fields(line);
  if (dims.size() != 3)
    raise(Errc::malformed_schedule, "schedule: second line must be 'N T M'");
  const int n = parse_int_field(dims[0], Errc::malformed_schedule, "N");
  const int t = parse_int_field(dims[1], Errc::malformed_schedule, "T");
  const int m = parse_int_field(dims[2], Errc::malformed_schedule, "M");
  if (n < 1 || t < 1 || m < 0)
    raise(Errc::malformed_schedule, "schedule: invalid N, T or M");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int row = 0; row < m; ++row) {
    if (!next_line(text, line))
      raise(Errc::malformed_schedule, "schedule: missing edge lines");
    const auto fields = split_fields(line);
    if (fields.size() != 2)
      raise(Errc::malformed_schedule, "schedule: edge line must be 'i j'");
    edges.push_back(
        {parse_int_field(fields[0], Errc::malformed_schedule, "i"),
         parse_int_field(fields[1], Errc::malformed_schedule, "j")});
  }

  Graph graph = [&] {
    try {
      return Graph::from_edge_list(n, edges);
    } catch (const Error& err) {
      if (err.code() == Errc::disconnected) throw;
      raise(Errc::malformed_schedule,
            std::string("schedule: bad edge list: ") + err.what());
    }
  }();
  if (graph.edges() != edges)
    raise(Errc::malformed_schedule,
          "schedule: edges must be listed in canonical order");

  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(t) * static_cast<std::size_t>(m));
  for (int row = 0; row < t; ++row) {
    if (!next_line(text, line))
      raise(Errc::malformed_schedule,
            "schedule: expected " + std::to_string(t) + " weight rows");
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != m)
      raise(Errc::malformed_schedule,
            "schedule: weight row " + std::to_string(row) + " has " +
                std::to_string(fields.size()) + " entries, want " +
                std::to_string(m));
    for (const auto& f : fields) {
      const double w = parse_double_field(f, Errc::malformed_schedule, "w");
      if (!std::isfinite(w))
        raise(Errc::malformed_schedule, "schedule: non-finite weight");
      if (!signed_weights && w < 0.0)
        raise(Errc::malformed_schedule,
              "schedule: negative weight in unsigned schedule");
      weights.push_back(w);
    }
  }
  if (next_line(text, line) && !split_fields(line).empty())
    raise(Errc::malformed_schedule, "schedule: trailing content");

  return WeightSchedule(std::move(graph), t, std::move(weights),
                        signed_weights);
}

WeightSchedule read_schedule_file(const std::filesystem::path& path) {
  return parse_schedule(read_text_file(path));
}

void write_schedule_file(const std::filesystem::path& path,
                         const WeightSchedule& schedule) {
  write_text_file(path, serialize_schedule(schedule));
}

std::string serialize_finite_plan(const FiniteTimePlan& plan) {
  std::string out(kPlanMagic);
  out += "\n";
  out += std::to_string(plan.node_count) + " " +
         std::to_string(plan.rounds()) + " " +
         std::string(finite_time_variant_name(plan.variant)) + "\n";
  out += format_double(plan.final_scale) + "\n";
  for (double a : plan.coefficients) out += format_double(a) + "\n";
  return out;
}

FiniteTimePlan parse_finite_plan(std::string_view text) {
  std::string_view line;
  if (!next_line(text, line) || line != kPlanMagic)
    raise(Errc::malformed_schedule, "finite plan: bad header");
  if (!next_line(text, line))
    raise(Errc::malformed_schedule, "finite plan: missing 'N R variant'");
  const auto dims = split_fields(line);
  if (dims.size() != 3)
    raise(Errc::malformed_schedule,
          "finite plan: second line must be 'N R variant'");
  FiniteTimePlan plan;
  plan.node_count = parse_int_field(dims[0], Errc::malformed_schedule, "N");
  const int rounds = parse_int_field(dims[1], Errc::malformed_schedule, "R");
  if (plan.node_count < 1 || rounds < 0)
    raise(Errc::malformed_schedule, "finite plan: invalid N or R");
  try {
    plan.variant = finite_time_variant_from_name(dims[2]);
  } catch (const Error&) {
    raise(Errc::malformed_schedule,
          "finite plan: unknown variant '" + std::string(dims[2]) + "'");
  }
  if (!next_line(text, line))
    raise(Errc::malformed_schedule, "finite plan: missing final scale");
  const auto scale_fields = split_fields(line);
  if (scale_fields.size() != 1)
    raise(Errc::malformed_schedule, "finite plan: bad final-scale line");
  plan.final_scale =
      parse_double_field(scale_fields[0], Errc::malformed_schedule, "scale");
  for (int r = 0; r < rounds; ++r) {
    if (!next_line(text, line))
      raise(Errc::malformed_schedule, "finite plan: missing coefficients");
    const auto fields = split_fields(line);
    if (fields.size() != 1)
      raise(Errc::malformed_schedule, "finite plan: bad coefficient line");
    plan.coefficients.push_back(
        parse_double_field(fields[0], Errc::malformed_schedule, "a"));
  }
  if (!std::isfinite(plan.final_scale) ||
      !std::all_of(plan.coefficients.begin(), plan.coefficients.end(),
                   [](double a) { return std::isfinite(a); }))
    raise(Errc::malformed_schedule, "finite plan: non-finite value");
  if (next_line(text, line) && !split_fields(line).empty())
    raise(Errc::malformed_schedule, "finite plan: trailing content");
  return plan;
}

FiniteTimePlan read_finite_plan_file(const std::filesystem::path& path) {
  return parse_finite_plan(read_text_file(path));
}

void write_finite_plan_file(const std::filesystem::path& path,
                            const FiniteTimePlan& plan) {
  write_text_file(path, serialize_finite_plan(plan));
}

}  // namespace consensus
