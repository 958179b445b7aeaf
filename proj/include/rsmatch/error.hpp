#pragma once

#include <stdexcept>
#include <string>

namespace rsm {

enum class Errc {
  malformed_line = 1,
  self_loop,
  duplicate_edge,
  endpoint_out_of_range,
  partition_violation,
  bad_epsilon,
  bad_params,
  bad_spec,
  param_overflow,
  bad_config,
  not_bipartite,
  too_large,
  invalid_matcher,
  not_underfull,
  already_present,
  h_not_subgraph,
  bad_dump,
  stream_length_mismatch,
  space_budget_exceeded,
  io_error,
  check_failed,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, std::string msg) { throw Error(code, std::move(msg)); }

}  // namespace rsm
