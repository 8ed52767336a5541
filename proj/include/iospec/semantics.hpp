#pragma once

// Trace acceptance and generalized-trace generation for specifications.
//
// Both interpreters walk the specification left to right with an explicit
// frame stack instead of higher-order continuations. The bottom frame plays
// the role of the initial continuation (End with the trace exhausted succeeds,
// Exit is an error); every entered loop pushes a frame whose End restarts the
// body and whose Exit pops back to the actions following the loop.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "iospec/ast.hpp"
#include "iospec/environment.hpp"
#include "iospec/traces.hpp"

namespace iospec {

struct GenerationLimits {
  std::size_t maxLoopIterations = 1000;
  // Bounds the number of generated trace steps and the size of any fused
  // output word set.
  std::size_t maxTraceLength = 10000;

  void validate() const;
};

struct IntegerRange {
  std::int64_t lo;
  std::int64_t hi;
  bool operator==(const IntegerRange&) const = default;
};

struct SamplingPolicy {
  IntegerRange integerRange{-10, 10};
  IntegerRange naturalRange{0, 10};
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for empty ranges or a negative natural bound.
  void validate() const;
};

struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An Exit reached with no enclosing loop. Ruled out by wellFormed.
struct ExitOutsideLoopError : std::runtime_error {
  ExitOutsideLoopError() : std::runtime_error("exit reached outside of any loop") {}
};

struct InterpretError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputRejected : InterpretError {
  InputRejected(std::size_t position, Integer value, std::string domain)
      : InterpretError("input #" + std::to_string(position + 1) + " (" + toString(value) + ") is not in " + domain),
        position(position),
        value(std::move(value)),
        domain(std::move(domain)) {}
  std::size_t position;
  Integer value;
  std::string domain;
};

struct InputsExhausted : InterpretError {
  explicit InputsExhausted(std::size_t position)
      : InterpretError("specification requires input #" + std::to_string(position + 1) + " but none is left"),
        position(position) {}
  std::size_t position;
};

struct SurplusInputs : InterpretError {
  explicit SurplusInputs(std::size_t count)
      : InterpretError(std::to_string(count) + " input(s) left over after the specification stopped"),
        count(count) {}
  std::size_t count;
};

struct GenerationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decides whether `trace` is a valid run of `spec` from the empty environment.
// Optional writes are tried as a match first and as a skip second.
// Throws EvalError, LimitExceeded (when no derivation accepts and some
// derivation ran into the loop bound) or ExitOutsideLoopError.
bool accept(const Specification& spec, const Trace& trace, const FunctionRegistry& registry,
            const GenerationLimits& limits = {});

// Runs the specification on a fixed input sequence and returns the unique
// generalized trace. Consecutive writes fuse by word-set concatenation.
GeneralizedTrace interpret(const Specification& spec, std::span<const Integer> inputs,
                           const FunctionRegistry& registry, const GenerationLimits& limits = {});

// Draws each input uniformly from its domain intersected with the policy
// range (explicit sets are sampled as given). Deterministic in
// (spec, policy, limits). Throws GenerationFailure when limits are hit.
GeneralizedTrace sampleGeneralizedTrace(const Specification& spec, const FunctionRegistry& registry,
                                        const SamplingPolicy& policy, const GenerationLimits& limits = {});

std::string describeDomain(const InputDomain& domain);

}  // namespace iospec
