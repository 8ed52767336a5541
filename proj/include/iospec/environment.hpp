#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "iospec/ast.hpp"
#include "iospec/value.hpp"
#include "iospec/words.hpp"

namespace iospec {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// x_C evaluated while x has no history yet.
struct UnboundCurrent : EvalError {
  explicit UnboundCurrent(VariableName var)
      : EvalError("variable '" + var + "' has no current value"), variable(std::move(var)) {}
  VariableName variable;
};

// Chronological value histories per variable. Persistent: store() returns a
// successor and never changes environments other holders can see. Histories
// share their prefixes, so a store costs O(log #variables).
class Environment {
 public:
  Environment() = default;

  // Δ_I restricted to `variables`: every variable bound to the empty history.
  static Environment initial(const std::set<VariableName>& variables);

  Environment store(const VariableName& var, Integer value) const;

  // Oldest first; empty for unknown variables.
  std::vector<Integer> history(const VariableName& var) const;
  std::size_t historyLength(const VariableName& var) const;
  // nullptr when the history is empty.
  const Integer* current(const VariableName& var) const;

  // Deterministic textual rendering of all non-empty histories, usable as a key.
  std::string fingerprint() const;

  bool operator==(const Environment& other) const;

 private:
  struct Cell {
    Integer value;
    std::size_t length;
    std::shared_ptr<const Cell> previous;
  };
  std::map<VariableName, std::shared_ptr<const Cell>> histories_;
};

Value evalTerm(const Term& term, const Environment& env, const FunctionRegistry& registry);

// eval(Θ, Δ) as a word set: one single-symbol word per term plus ε when Θ
// contains it.
OutputWordSet evalOutputSet(const OutputTermSet& theta, const Environment& env, const FunctionRegistry& registry);

}  // namespace iospec
