#pragma once

// Ordinary traces (?v / !v ... stop), generalized traces (?v / !V ... stop),
// the normalization embedding, and the covering relation.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iospec/value.hpp"
#include "iospec/words.hpp"

namespace iospec {

struct TraceStep {
  enum class Kind { In, Out };
  Kind kind;
  Integer value;

  static TraceStep in(Integer v) { return {Kind::In, std::move(v)}; }
  static TraceStep out(Integer v) { return {Kind::Out, std::move(v)}; }

  bool isInput() const { return kind == Kind::In; }
  bool operator==(const TraceStep&) const = default;
};

// Implicitly terminated by stop. Consecutive outputs are allowed.
struct Trace {
  std::vector<TraceStep> steps;

  std::vector<Integer> inputs() const;
  bool operator==(const Trace&) const = default;
};

struct GenStep {
  enum class Kind { In, OutSet };
  Kind kind;
  Integer value;        // In
  OutputWordSet words;  // OutSet

  static GenStep in(Integer v) { return {Kind::In, std::move(v), {}}; }
  static GenStep outSet(OutputWordSet w) { return {Kind::OutSet, 0, std::move(w)}; }

  bool isInput() const { return kind == Kind::In; }
  bool operator==(const GenStep&) const = default;
  bool operator<(const GenStep& other) const;
};

// Terminated by stop.
struct GeneralizedTrace {
  std::vector<GenStep> steps;

  bool operator==(const GeneralizedTrace&) const = default;
  bool operator<(const GeneralizedTrace& other) const { return steps < other.steps; }
};

// No two consecutive output steps and every output set valid (V\{ε} ≠ ∅).
bool isWellFormed(const GeneralizedTrace& trace);

// True iff every output set is a singleton holding a non-empty word, with no
// two consecutive outputs: the image of normalize().
bool isNormalizedTrace(const GeneralizedTrace& trace);

// Input values of a generalized trace, in order.
std::vector<Integer> extractInputs(const GeneralizedTrace& trace);

// Fuses each maximal run of outputs into one singleton word set.
GeneralizedTrace normalize(const Trace& trace);

// ----------------------------------------------------------------- covering

// What the checker expected or saw at a position; nullopt means stop.
using ExpectedStep = std::optional<GenStep>;
using ObservedStep = std::optional<GenStep>;

struct Covered {
  bool operator==(const Covered&) const = default;
};

struct AlignmentMismatch {
  ExpectedStep expected;
  ObservedStep got;
  bool operator==(const AlignmentMismatch&) const = default;
};

struct OutputMismatch {
  Word value;
  OutputWordSet allowed;
  bool operator==(const OutputMismatch&) const = default;
};

using CoverageResult = std::variant<Covered, AlignmentMismatch, OutputMismatch>;

inline bool isCovered(const CoverageResult& r) { return std::holds_alternative<Covered>(r); }

struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Decides nt ≺ gt. `nt` must be in the image of normalize (throws
// PreconditionViolation otherwise). On failure reports the earliest mismatch
// along the first derivation attempted; both ε-skip and word match are
// explored where they apply.
CoverageResult covers(const GeneralizedTrace& gt, const GeneralizedTrace& nt);

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every normalized trace obtained by picking one word per output set (ε drops
// the step). Throws BoundExceeded if there are more than `bound`.
std::set<GeneralizedTrace> concretize(const GeneralizedTrace& gt, std::size_t bound);

// --------------------------------------------------------------- text format

struct TraceParseError : std::runtime_error {
  TraceParseError(std::size_t position, const std::string& message)
      : std::runtime_error("trace parse error at offset " + std::to_string(position) + ": " + message),
        position(position) {}
  std::size_t position;
};

// "?2 ?5 ?3 !8 stop"
std::string renderTrace(const Trace& trace);
// "?3 !{eps, 3} ?-1 !{eps, 2} stop"
std::string renderTrace(const GeneralizedTrace& trace);
// "?1", "!{eps, 3}", "stop"; output sets of singleton words are shown as sets.
std::string renderStep(const ExpectedStep& step);
// Renders observed steps of a normalized trace the way the ordinary trace shows
// them: "!15", "!<1 2>", "?3", "stop".
std::string renderObserved(const ObservedStep& step);
std::string renderInputs(const std::vector<Integer>& inputs);

// Whitespace between steps is optional ("?2?5!7stop" parses).
Trace parseTrace(std::string_view text);
GeneralizedTrace parseGeneralizedTrace(std::string_view text);

}  // namespace iospec
