// iospec: check, run and test against console I/O specifications.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iospec/harness.hpp"
#include "iospec/parser.hpp"
#include "iospec/semantics.hpp"
#include "iospec/traces.hpp"

namespace {

using namespace iospec;

constexpr int kUsageError = 2;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Integer> parseInputList(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(parseInteger(item.substr(first, last - first + 1)));
  }
  return out;
}

IntegerRange parseRange(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like LO..HI: '" + text + "'");
  return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specify, interpret and test interactive console programs"};
  app.require_subcommand(1);

  std::string specPath;
  std::string inputs;
  std::string traceText;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t tests = 100;
  std::string program;
  std::vector<std::string> programArgs;
  long timeoutMs = 5000;
  long quiescenceMs = 50;
  std::string intRange = "-10..10";
  std::string natRange = "0..10";
  std::string format = "human";
  std::string feedback = "full";
  bool skipBlank = false;
  std::size_t maxLoops = 1000;
  std::size_t maxLength = 10000;

  auto* check = app.add_subcommand("check", "Parse a specification and check that it is well formed");
  check->add_option("spec", specPath, "Specification file")->required();

  auto* interpretCmd = app.add_subcommand("interpret", "Print the generalized trace for fixed inputs");
  interpretCmd->add_option("spec", specPath, "Specification file")->required();
  interpretCmd->add_option("--inputs", inputs, "Comma-separated input values")->required();

  auto* sample = app.add_subcommand("sample", "Print randomly sampled generalized traces");
  sample->add_option("spec", specPath, "Specification file")->required();
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--count", count, "Number of traces")->check(CLI::PositiveNumber);
  sample->add_option("--int-range", intRange, "Range for ints inputs, LO..HI");
  sample->add_option("--nat-range", natRange, "Range for nats inputs, LO..HI");

  auto* test = app.add_subcommand("test", "Test an executable against a specification");
  test->add_option("spec", specPath, "Specification file")->required();
  test->add_option("--program", program, "Executable under test")->required();
  test->add_option("--args", programArgs, "Arguments passed to the program");
  test->add_option("--tests", tests, "Number of tests");
  test->add_option("--seed", seed, "Random seed");
  test->add_option("--timeout", timeoutMs, "Per-run timeout in milliseconds");
  test->add_option("--quiescence", quiescenceMs, "Output quiescence window in milliseconds");
  test->add_option("--int-range", intRange, "Range for ints inputs, LO..HI");
  test->add_option("--nat-range", natRange, "Range for nats inputs, LO..HI");
  test->add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  test->add_option("--feedback", feedback, "Show the full generalized trace or one example run")
      ->check(CLI::IsMember({"full", "example"}));
  test->add_flag("--skip-blank", skipBlank, "Ignore blank output lines");
  test->add_option("--max-loop-iterations", maxLoops, "Loop iteration bound during generation");
  test->add_option("--max-trace-length", maxLength, "Trace length bound during generation");

  auto* acceptCmd = app.add_subcommand("accept", "Decide whether a trace is a valid run");
  acceptCmd->add_option("spec", specPath, "Specification file")->required();
  acceptCmd->add_option("--trace", traceText, "Trace such as \"?2 ?5 ?3 !8 stop\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kUsageError;
  }

  const FunctionRegistry& registry = FunctionRegistry::builtins();
  try {
    const std::string text = readFile(specPath);

    if (check->parsed()) {
      try {
        parseSpec(text, registry);
      } catch (const ParseError& e) {
        std::cerr << specPath << ":" << e.what() << "\n";
        return 1;
      } catch (const StaticError& e) {
        std::cerr << specPath << ": " << e.what() << "\n";
        return 1;
      }
      std::cout << "ok\n";
      return 0;
    }

    const Specification spec = parseSpec(text, registry);

    if (interpretCmd->parsed()) {
      const auto values = parseInputList(inputs);
      std::cout << renderTrace(interpret(spec, values, registry)) << "\n";
      return 0;
    }

    if (sample->parsed()) {
      SamplingPolicy policy{parseRange(intRange), parseRange(natRange), seed};
      for (std::size_t i = 0; i < count; ++i) {
        policy.seed = deriveSeed(seed, i);
        std::cout << renderTrace(sampleGeneralizedTrace(spec, registry, policy)) << "\n";
      }
      return 0;
    }

    if (acceptCmd->parsed()) {
      const bool ok = accept(spec, parseTrace(traceText), registry);
      std::cout << (ok ? "True" : "False") << "\n";
      return ok ? 0 : 1;
    }

    TestConfig config;
    config.numTests = tests;
    config.policy = SamplingPolicy{parseRange(intRange), parseRange(natRange), seed};
    config.limits = GenerationLimits{maxLoops, maxLength};
    config.reportFormat = format == "machine" ? ReportFormat::MachineLines : ReportFormat::Human;
    config.feedback = feedback == "example" ? FeedbackDetail::Example : FeedbackDetail::Full;
    SubprocessConfig target;
    target.executablePath = program;
    target.arguments = programArgs;
    target.perRunTimeout = std::chrono::milliseconds(timeoutMs);
    target.quiescenceWindow = std::chrono::milliseconds(quiescenceMs);
    target.outputParseMode = skipBlank ? OutputParseMode::SkipBlank : OutputParseMode::StrictInteger;
    const TestReport report = runTestSuite(spec, target, config, registry);
    std::cout << formatFeedback(report, config.reportFormat) << "\n";
    return exitCodeFor(report);
  } catch (const ParseError& e) {
    std::cerr << specPath << ":" << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsageError;
}
