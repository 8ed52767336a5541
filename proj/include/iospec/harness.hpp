#pragma once

// Randomized black-box testing of a program against a specification:
// sample a generalized trace, run the program on its inputs, check that the
// normalized run is covered, stop at the first counterexample.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iospec/ast.hpp"
#include "iospec/runner.hpp"
#include "iospec/semantics.hpp"
#include "iospec/traces.hpp"

namespace iospec {

enum class ReportFormat { Human, MachineLines };

// How much of the expected behaviour feedback reveals: the whole generalized
// trace, or a single valid run for the failing inputs.
enum class FeedbackDetail { Full, Example };

struct TestConfig {
  std::size_t numTests = 100;
  SamplingPolicy policy;
  GenerationLimits limits;
  std::size_t maxGenerationAttempts = 10;
  ReportFormat reportFormat = ReportFormat::Human;
  FeedbackDetail feedback = FeedbackDetail::Full;

  // Throws ConfigError.
  void validate() const;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The run was covered by the expected behaviour but did not end cleanly
// (timeout, crash, protocol violation).
struct AbnormalTermination {
  ExitKind exitKind;
  std::string detail;
  bool operator==(const AbnormalTermination&) const = default;
};

using FailureReason = std::variant<AlignmentMismatch, OutputMismatch, AbnormalTermination>;

struct Counterexample {
  std::vector<Integer> inputs;
  GeneralizedTrace expected;
  Trace actual;
  FailureReason error;
  std::uint64_t testSeed = 0;
};

struct AllPassed {
  std::size_t count;
};
struct Falsified {
  Counterexample counterexample;
};
struct GenerationStuck {
  std::size_t attempts;
  std::string details;
};

struct TestReport {
  std::variant<AllPassed, Falsified, GenerationStuck> verdict;
  std::size_t testsRun = 0;
  std::uint64_t seed = 0;
  FeedbackDetail feedback = FeedbackDetail::Full;
};

using TestTarget = std::variant<ScriptedProgram, SubprocessConfig>;

// Seed for test `index` (and generation attempt) derived from the master seed.
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t index, std::uint64_t attempt = 0);

TestReport runTestSuite(const Specification& spec, const TestTarget& target, const TestConfig& config,
                        const FunctionRegistry& registry = FunctionRegistry::builtins());

std::string formatFeedback(const TestReport& report, ReportFormat format = ReportFormat::Human);

// Exit codes used by the command line tool.
int exitCodeFor(const TestReport& report);

// One concrete run represented by `gt`: the first non-empty word of every
// output set.
Trace exampleRun(const GeneralizedTrace& gt);

}  // namespace iospec
