#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "consensus/baselines.hpp"
#include "consensus/dynamics.hpp"

namespace consensus {

// Weight-schedule text format:
//   line 1: "consensus-schedule v1"  ("consensus-schedule v1 signed" when
//           negative weights are permitted)
//   line 2: "N T M"
//   then M edge lines "i j" in canonical order,
//   then T weight rows of M numbers each.
// Numbers are written in shortest round-trip decimal form, so
// parse(serialize(s)) reproduces s bit for bit.  Deviations from the format
// throw Errc::malformed_schedule.
std::string serialize_schedule(const WeightSchedule& schedule);
WeightSchedule parse_schedule(std::string_view text);
WeightSchedule read_schedule_file(const std::filesystem::path& path);
void write_schedule_file(const std::filesystem::path& path,
                         const WeightSchedule& schedule);

// Finite-time plan text format:
//   line 1: "consensus-finite-plan v1"
//   line 2: "N R variant"   (variant: literal | nulling)
//   line 3: final scale
//   then R coefficient lines.
// Finite-time rounds are not symmetric edge-weight rounds (each round
// rescales the diagonal), so plans get their own format instead of being
// shoehorned into a schedule file.
std::string serialize_finite_plan(const FiniteTimePlan& plan);
FiniteTimePlan parse_finite_plan(std::string_view text);
FiniteTimePlan read_finite_plan_file(const std::filesystem::path& path);
void write_finite_plan_file(const std::filesystem::path& path,
                            const FiniteTimePlan& plan);

}  // namespace consensus
