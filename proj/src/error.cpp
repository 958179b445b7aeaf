#include "rsmatch/error.hpp"

namespace rsm {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_line: return "malformed_line";
    case Errc::self_loop: return "self_loop";
    case Errc::duplicate_edge: return "duplicate_edge";
    case Errc::endpoint_out_of_range: return "endpoint_out_of_range";
    case Errc::partition_violation: return "partition_violation";
    case Errc::bad_epsilon: return "bad_epsilon";
    case Errc::bad_params: return "bad_params";
    case Errc::bad_spec: return "bad_spec";
    case Errc::param_overflow: return "param_overflow";
    case Errc::bad_config: return "bad_config";
    case Errc::not_bipartite: return "not_bipartite";
    case Errc::too_large: return "too_large";
    case Errc::invalid_matcher: return "invalid_matcher";
    case Errc::not_underfull: return "not_underfull";
    case Errc::already_present: return "already_present";
    case Errc::h_not_subgraph: return "h_not_subgraph";
    case Errc::bad_dump: return "bad_dump";
    case Errc::stream_length_mismatch: return "stream_length_mismatch";
    case Errc::space_budget_exceeded: return "space_budget_exceeded";
    case Errc::io_error: return "io_error";
    case Errc::check_failed: return "check_failed";
  }
  return "unknown";
}

}  // namespace rsm
