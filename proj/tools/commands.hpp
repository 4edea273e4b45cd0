#pragma once

#include "io.hpp"
#include "koszul/certificate.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koszul::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kVerdictFailed = 1, kDisagreement = 2, kBadInput = 3 };

struct Options {
  std::string command;
  int i_max = 4, j_max = 4;
  std::size_t budget = kDefaultTermBudget;
  std::vector<Method> methods{Method::Homology, Method::Distributivity, Method::KoszulComplex};
  std::optional<Field> field;
  std::optional<std::uint64_t> seed;
  bool timings = false;  // wall-clock timings make the report nondeterministic
};

struct Outcome {
  Json report;
  int exit_code = kOk;
};

const std::vector<std::string>& command_names();

/// Parses `input`, runs the command and builds the report. Never throws for
/// library errors: they become exit codes 2 and 3 with an "error" entry.
Outcome run_command(const Options& opt, std::string_view input);

/// The report as written to disk: two-space indent, trailing newline.
std::string render(const Json& report);

}  // namespace koszul::cli
