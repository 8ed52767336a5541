#include "iospec/harness.hpp"

#include <sstream>

namespace iospec {

void TestConfig::validate() const {
  if (numTests < 1) throw ConfigError("number of tests must be at least 1");
  if (maxGenerationAttempts < 1) throw ConfigError("generation attempts must be at least 1");
  try {
    policy.validate();
    limits.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t index, std::uint64_t attempt) {
  // splitmix64 finalizer over the combined coordinates
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1) + 0xbf58476d1ce4e5b9ULL * attempt;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

RunOutcome runTarget(const TestTarget& target, const std::vector<Integer>& inputs) {
  if (const auto* scripted = std::get_if<ScriptedProgram>(&target)) return runScripted(*scripted, inputs);
  return runSubprocess(std::get<SubprocessConfig>(target), inputs);
}

}  // namespace

TestReport runTestSuite(const Specification& spec, const TestTarget& target, const TestConfig& config,
                        const FunctionRegistry& registry) {
  config.validate();
  if (const auto* sub = std::get_if<SubprocessConfig>(&target)) {
    try {
      sub->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  TestReport report;
  report.seed = config.policy.seed;
  report.feedback = config.feedback;
  for (std::size_t test = 0; test < config.numTests; ++test) {
    std::optional<GeneralizedTrace> expected;
    std::uint64_t testSeed = 0;
    std::string lastFailure;
    for (std::size_t attempt = 0; attempt < config.maxGenerationAttempts && !expected; ++attempt) {
      SamplingPolicy policy = config.policy;
      policy.seed = testSeed = deriveSeed(config.policy.seed, test, attempt);
      try {
        expected = sampleGeneralizedTrace(spec, registry, policy, config.limits);
      } catch (const GenerationFailure& e) {
        lastFailure = e.what();
      }
    }
    if (!expected) {
      report.verdict = GenerationStuck{config.maxGenerationAttempts, lastFailure};
      return report;
    }
    ++report.testsRun;

    std::vector<Integer> inputs = extractInputs(*expected);
    RunOutcome run = runTarget(target, inputs);
    CoverageResult coverage = covers(*expected, normalize(run.trace));
    std::optional<FailureReason> failure;
    if (const auto* a = std::get_if<AlignmentMismatch>(&coverage)) {
      failure = *a;
    } else if (const auto* o = std::get_if<OutputMismatch>(&coverage)) {
      failure = *o;
    } else if (run.exitKind != ExitKind::CleanHalt) {
      failure = AbnormalTermination{run.exitKind, run.describeExit()};
    }
    if (failure) {
      report.verdict =
          Falsified{Counterexample{std::move(inputs), std::move(*expected), std::move(run.trace), *failure, testSeed}};
      return report;
    }
  }
  report.verdict = AllPassed{report.testsRun};
  return report;
}

Trace exampleRun(const GeneralizedTrace& gt) {
  Trace out;
  for (const auto& s : gt.steps) {
    if (s.isInput()) {
      out.steps.push_back(TraceStep::in(s.value));
      continue;
    }
    for (const auto& w : s.words.words()) {
      if (w.empty()) continue;
      for (const auto& v : w) out.steps.push_back(TraceStep::out(v));
      break;
    }
  }
  return out;
}

namespace {

std::string humanError(const FailureReason& error) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AlignmentMismatch>) {
          return "AlignmentMismatch:\n  Expected: " + renderStep(e.expected) + "\n  Got: " + renderObserved(e.got);
        } else if constexpr (std::is_same_v<T, OutputMismatch>) {
          return "  OutputMismatch:\n    the value " + renderWord(e.value) + " is not covered by " +
                 renderWordSet(e.allowed);
        } else {
          return "  AbnormalTermination:\n    the program did not terminate cleanly: " + e.detail;
        }
      },
      error);
}

std::string machineError(const FailureReason& error) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AlignmentMismatch>) {
          return "AlignmentMismatch expected=" + renderStep(e.expected) + " got=" + renderObserved(e.got);
        } else if constexpr (std::is_same_v<T, OutputMismatch>) {
          return "OutputMismatch value=" + renderWord(e.value) + " allowed=" + renderWordSet(e.allowed);
        } else {
          return "AbnormalTermination exit=" + e.detail;
        }
      },
      error);
}

std::string joinInputs(const std::vector<Integer>& inputs) {
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) out += (i ? "," : "") + toString(inputs[i]);
  return out;
}

std::string formatHuman(const TestReport& report) {
  if (const auto* passed = std::get_if<AllPassed>(&report.verdict)) {
    return "+++ OK, passed " + std::to_string(passed->count) + " tests.";
  }
  if (const auto* stuck = std::get_if<GenerationStuck>(&report.verdict)) {
    return "*** Gave up! Could not generate a test case after " + std::to_string(stuck->attempts) +
           " attempts (" + std::to_string(report.testsRun) + " tests passed before).\n" + stuck->details;
  }
  const Counterexample& c = std::get<Falsified>(report.verdict).counterexample;
  std::string out = "*** Failed! Falsifiable:\n";
  out += "Input sequence:" + (c.inputs.empty() ? std::string() : " " + renderInputs(c.inputs)) + "\n";
  if (report.feedback == FeedbackDetail::Full) {
    out += "Expected run (generalized): " + renderTrace(c.expected) + "\n";
  } else {
    out += "Expected run (example): " + renderTrace(exampleRun(c.expected)) + "\n";
  }
  out += "Actual run: " + renderTrace(c.actual) + "\n";
  out += "Error:\n" + humanError(c.error);
  return out;
}

std::string formatMachine(const TestReport& report) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AllPassed>) {
          os << "verdict=passed\n";
        } else if constexpr (std::is_same_v<T, GenerationStuck>) {
          os << "verdict=generation-stuck\n";
        } else {
          os << "verdict=falsified\n";
        }
      },
      report.verdict);
  os << "tests=" << report.testsRun << "\n";
  os << "seed=" << report.seed;
  if (const auto* f = std::get_if<Falsified>(&report.verdict)) {
    const Counterexample& c = f->counterexample;
    os << "\ninputs=" << joinInputs(c.inputs);
    os << "\nexpected="
       << (report.feedback == FeedbackDetail::Full ? renderTrace(c.expected) : renderTrace(exampleRun(c.expected)));
    os << "\nactual=" << renderTrace(c.actual);
    os << "\nerror=" << machineError(c.error);
  } else if (const auto* s = std::get_if<GenerationStuck>(&report.verdict)) {
    os << "\nerror=" << s->details;
  }
  return os.str();
}

}  // namespace

std::string formatFeedback(const TestReport& report, ReportFormat format) {
  return format == ReportFormat::Human ? formatHuman(report) : formatMachine(report);
}

int exitCodeFor(const TestReport& report) {
  if (std::holds_alternative<AllPassed>(report.verdict)) return 0;
  if (std::holds_alternative<Falsified>(report.verdict)) return 1;
  return 2;
}

}  // namespace iospec
