#pragma once

#include <ostream>

#include "config.hpp"

namespace ptcrum::cli {

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// True for library errors that describe bad input rather than a failed run.
bool is_parameter_error(const Error& e);

int cmd_model_show(const RunConfig& cfg, std::ostream& out);
int cmd_transform(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& cfg, std::ostream& out);

}  // namespace ptcrum::cli
