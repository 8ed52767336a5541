#pragma once

// Running programs under test on a fixed input sequence.
//
// ScriptedProgram is an inspectable console program: each state either asks
// for an input, emits an output, or halts. runScripted is exact. The
// subprocess adapter talks to an executable over a newline-delimited integer
// protocol and reconstructs the interleaving by waiting for output to go
// quiet after each input line, which is best effort.

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iospec/traces.hpp"
#include "iospec/value.hpp"

namespace iospec {

class ScriptedProgram {
 public:
  struct RequestInput {
    std::function<ScriptedProgram(const Integer&)> resume;
  };
  struct EmitOutput {
    Integer value;
    std::function<ScriptedProgram()> next;
  };
  struct Halt {};
  using Step = std::variant<RequestInput, EmitOutput, Halt>;

  static ScriptedProgram read(std::function<ScriptedProgram(const Integer&)> resume);
  static ScriptedProgram write(Integer value, std::function<ScriptedProgram()> next);
  static ScriptedProgram halt();

  const Step& step() const { return *step_; }

 private:
  explicit ScriptedProgram(Step step) : step_(std::make_shared<const Step>(std::move(step))) {}
  std::shared_ptr<const Step> step_;
};

enum class ExitKind { CleanHalt, TimedOut, Crashed, ProtocolError };

std::string_view exitKindName(ExitKind kind);

struct RunOutcome {
  Trace trace;
  ExitKind exitKind = ExitKind::CleanHalt;
  int exitCode = 0;    // Crashed: exit status, or 128 + signal number
  std::string detail;  // ProtocolError: InputUnderflow, UnparsableOutput, UnterminatedLine
  std::size_t consumedInputs = 0;
  std::string diagnostics;  // captured standard error

  std::string describeExit() const;
};

// Mirrors the trace-producing simulation of an inspectable IO program.
// Inputs left over at Halt are tolerated (CleanHalt, consumedInputs smaller
// than provided). Requesting input when none is left stops the run with
// ProtocolError "InputUnderflow". Exceeding `maxSteps` yields TimedOut.
RunOutcome runScripted(const ScriptedProgram& program, std::span<const Integer> inputs,
                       std::size_t maxSteps = 1'000'000);

enum class OutputParseMode { StrictInteger, SkipBlank };

struct SubprocessConfig {
  std::string executablePath;
  std::vector<std::string> arguments;
  std::chrono::milliseconds perRunTimeout{5000};
  std::chrono::milliseconds quiescenceWindow{50};
  OutputParseMode outputParseMode = OutputParseMode::StrictInteger;

  // Throws std::invalid_argument unless timeout > quiescence > 0.
  void validate() const;
};

struct SpawnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Each input is written as one decimal line once the program's output has
// been quiet for the quiescence window; every output line must be a decimal
// integer. The child is killed and reaped when perRunTimeout elapses.
RunOutcome runSubprocess(const SubprocessConfig& config, std::span<const Integer> inputs);

}  // namespace iospec
