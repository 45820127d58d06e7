#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace consensus {

// Failure categories reported by the library.  Every throw site uses Error
// below so callers can branch on code() instead of parsing messages.
enum class Errc {
  self_loop,                  // edge (i,i) supplied
  node_out_of_range,          // edge endpoint outside [0, n)
  disconnected,               // graph is not connected
  generation_failed,          // random-graph rejection cap exhausted
  invalid_params,             // parameter outside its documented domain
  unknown_name,               // unrecognized named graph / enum string
  dimension_mismatch,         // vector/matrix sizes disagree
  not_symmetric,              // symmetric-matrix routine fed an asymmetric input
  no_convergence,             // iteration cap reached without meeting tolerance
  horizon_exceeds_schedule,   // simulate beyond schedule length without periodic
  eigenvalue_one_not_simple,  // period product has a repeated unit eigenvalue
  zero_eigenvalue_not_simple, // Laplacian zero eigenvalue repeated (disconnected)
  non_finite,                 // NaN/Inf encountered where finiteness is required
  malformed_schedule,         // schedule text violates the file format
  malformed_graph_file,       // edge-list text violates the file format
  io_error,                   // filesystem read/write failed
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::self_loop: return "self_loop";
    case Errc::node_out_of_range: return "node_out_of_range";
    case Errc::disconnected: return "disconnected";
    case Errc::generation_failed: return "generation_failed";
    case Errc::invalid_params: return "invalid_params";
    case Errc::unknown_name: return "unknown_name";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_symmetric: return "not_symmetric";
    case Errc::no_convergence: return "no_convergence";
    case Errc::horizon_exceeds_schedule: return "horizon_exceeds_schedule";
    case Errc::eigenvalue_one_not_simple: return "eigenvalue_one_not_simple";
    case Errc::zero_eigenvalue_not_simple: return "zero_eigenvalue_not_simple";
    case Errc::non_finite: return "non_finite";
    case Errc::malformed_schedule: return "malformed_schedule";
    case Errc::malformed_graph_file: return "malformed_graph_file";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace consensus
