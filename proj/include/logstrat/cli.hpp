#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logstrat/derivation.hpp"

namespace logstrat::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class DerivationSource { Tangent, Explicit };

struct ProblemOptions {
  std::optional<unsigned> first_integral_degree;
  std::optional<std::uint64_t> step_budget;
  std::optional<std::string> output;
  std::optional<bool> strict_bracket;
};

struct ProblemSpec {
  RingPtr ring;
  std::vector<Polynomial> ideal;
  DerivationSource source = DerivationSource::Tangent;
  std::vector<Derivation> derivations;
  ProblemOptions options;
};

// Line-oriented input:
//   ring Q[x,y,z] order degrevlex
//   ideal { x*y*(x+y)*(x+y*z) }
//   derivations tangent          # or: derivations { x*dx + y*dy ; (x+y*z)*dz }
//   option first-integral-degree 3
// Blocks may span lines; '#' starts a comment. Throws ParseError (with line
// and column) or PreconditionError (arity).
ProblemSpec parse_problem(const std::string& text);

// Canonical text; parse_problem(print_problem(s)) reproduces s.
std::string print_problem(const ProblemSpec& spec);

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

enum class Command { Stratify, Fiber, CheckFree, Tangent, Verify };

std::optional<Command> parse_command(const std::string& name);

struct RunOptions {
  std::string output = "json";
  unsigned first_integral_degree = 3;
  std::optional<std::uint64_t> step_budget;
  bool strict_bracket = false;
  // "a,b,c" for fiber; validated against the ring arity when run.
  std::optional<std::string> point;
};

// Command-line values win over in-file options.
RunOptions merge_options(RunOptions cli, const ProblemOptions& file, bool output_given, bool degree_given,
                         bool strict_given);

// "a,b,c" with integer or p/q coordinates.
Point parse_point(const std::string& text, std::size_t arity);

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

enum ExitCode : int { kOk = 0, kUnresolved = 1, kInputError = 2, kBudgetExhausted = 3 };

// Deterministic: identical inputs give byte-identical `out`.
RunResult run(Command command, const ProblemSpec& spec, const RunOptions& options);

// Full pipeline from file text, mapping every error to its exit code.
RunResult run_text(Command command, const std::string& text, RunOptions options, bool output_given = false,
                   bool degree_given = false, bool strict_given = false);

}  // namespace logstrat::cli
