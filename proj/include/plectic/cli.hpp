#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plectic/report.hpp"
#include "plectic/spec.hpp"

namespace plectic {

enum ExitCode : int { ExitPass = 0, ExitFail = 1, ExitInput = 2 };

/// Runs the `plectic` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sampling options after applying flag > PLECTIC_SEED > spec file > default.
SamplingOptions resolve_sampling(const ManifoldSpec& spec, std::optional<std::size_t> count_flag,
                                 std::optional<std::uint64_t> seed_flag, const char* env_seed);

/// Constraint "coord=value" list, e.g. "x5=0,x6=0".
std::vector<std::pair<std::size_t, Rational>> parse_submanifold(const std::string& text, const Chart& chart);

nlohmann::json report_to_json(const VerificationReport& r);

} // namespace plectic
