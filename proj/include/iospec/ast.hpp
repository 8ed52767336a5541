#pragma once

// Syntax trees for specifications and terms.
//
// A Specification is a flat list of actions; the empty list is the empty
// specification `0`. Sequential composition is associative with `0` as its
// neutral element, so the canonical form never contains nested sequences or
// `0` markers. The raw `Sequence` and `Nop` action kinds exist so that
// un-normalized trees can be built and handed to normalizeSpec.

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "iospec/value.hpp"

namespace iospec {

using VariableName = std::string;
using FunctionName = std::string;

// ---------------------------------------------------------------- terms

struct Term;

struct IntConst {
  Integer value;
  bool operator==(const IntConst&) const = default;
};

// x_C: the most recent value read into x.
struct CurrentVar {
  VariableName var;
  bool operator==(const CurrentVar&) const = default;
};

// x_A: every value read into x, oldest first.
struct AllVar {
  VariableName var;
  bool operator==(const AllVar&) const = default;
};

struct Apply {
  FunctionName fn;
  std::vector<Term> args;
  bool operator==(const Apply& other) const;
};

struct Term {
  std::variant<IntConst, CurrentVar, AllVar, Apply> node;

  bool operator==(const Term& other) const { return node == other.node; }
};

Term constant(Integer value);
Term current(VariableName var);
Term all(VariableName var);
Term apply(FunctionName fn, std::vector<Term> args);

// ------------------------------------------------------- function registry

struct FunctionSignature {
  std::vector<Sort> params;
  Sort result = Sort::Integer;
  // Must be total on sort-correct arguments.
  std::function<Value(std::span<const Value>)> eval;
};

class FunctionRegistry {
 public:
  // sum, len, + - *, == < <= > >=, and, or, not.
  static const FunctionRegistry& builtins();

  void define(FunctionName name, FunctionSignature signature);
  const FunctionSignature* find(const FunctionName& name) const;

 private:
  std::map<FunctionName, FunctionSignature> functions_;
};

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sort of a term under `registry`. Throws SortError on unknown functions,
// arity mismatches and ill-sorted arguments.
Sort inferSort(const Term& term, const FunctionRegistry& registry);

// --------------------------------------------------------- specifications

enum class NamedDomain { Integers, Naturals };

// The annotation τ on a read. Explicit sets are never empty.
class InputDomain {
 public:
  static InputDomain integers() { return InputDomain(NamedDomain::Integers); }
  static InputDomain naturals() { return InputDomain(NamedDomain::Naturals); }
  // Throws std::invalid_argument when `values` is empty.
  static InputDomain of(std::set<Integer> values);

  bool contains(const Integer& value) const;

  bool isNamed() const { return std::holds_alternative<NamedDomain>(repr_); }
  NamedDomain named() const { return std::get<NamedDomain>(repr_); }
  const std::set<Integer>& values() const { return std::get<std::set<Integer>>(repr_); }

  bool operator==(const InputDomain&) const = default;

 private:
  explicit InputDomain(std::variant<NamedDomain, std::set<Integer>> repr) : repr_(std::move(repr)) {}
  std::variant<NamedDomain, std::set<Integer>> repr_;
};

// Θ: a set of integer terms, optionally containing ε.
struct OutputTermSet {
  bool includesEpsilon = false;
  std::vector<Term> terms;

  // Drops structurally duplicate terms, keeping first occurrences.
  static OutputTermSet of(bool includesEpsilon, std::vector<Term> terms);

  bool operator==(const OutputTermSet&) const = default;
};

struct Action;

struct Specification {
  std::vector<Action> actions;

  bool empty() const { return actions.empty(); }
  bool operator==(const Specification& other) const;
};

struct ReadInput {
  VariableName var;
  InputDomain domain;
  bool operator==(const ReadInput&) const = default;
};

struct WriteOutput {
  OutputTermSet outputs;
  bool operator==(const WriteOutput&) const = default;
};

// s1 ∠c∖ s2: a true condition selects trueBranch (s2), otherwise falseBranch (s1).
struct Branch {
  Term condition;
  Specification falseBranch;
  Specification trueBranch;
  bool operator==(const Branch&) const = default;
};

// s^→E: repeats body until an Exit bound to this loop is reached.
struct TillExit {
  Specification body;
  bool operator==(const TillExit&) const = default;
};

struct Exit {
  bool operator==(const Exit&) const = default;
};

// Raw construction forms, removed by normalizeSpec.
struct Sequence {
  Specification inner;
  bool operator==(const Sequence&) const = default;
};
struct Nop {
  bool operator==(const Nop&) const = default;
};

struct Action {
  std::variant<ReadInput, WriteOutput, Branch, TillExit, Exit, Sequence, Nop> node;

  bool operator==(const Action& other) const { return node == other.node; }
};

// Single-action specifications, composable with seq().
Specification readInput(VariableName var, InputDomain domain);
Specification writeOutput(OutputTermSet outputs);
Specification writeOutput(std::vector<Term> terms, bool includesEpsilon = false);
Specification branch(Term condition, Specification falseBranch, Specification trueBranch);
Specification tillExit(Specification body);
Specification exitMarker();
Specification nop();
// Concatenates action lists (flat; no Sequence nodes are introduced).
Specification seq(std::initializer_list<Specification> parts);
// Wraps a specification as a single nested Sequence action.
Specification nested(Specification inner);

// ------------------------------------------------------------- operations

// Flattens nested sequences and removes `0`. Idempotent, semantics-preserving.
Specification normalizeSpec(const Specification& spec);

bool isNormalized(const Specification& spec);

enum class ViolationKind {
  UseBeforeRead,
  MissingExit,
  ExitOutsideLoop,
  SortMismatch,
  EmptyWrite,
};

std::string_view violationKindName(ViolationKind kind);

// Path into the tree: alternating (action index, child slot) pairs, always
// ending with an action index. Child slots: Branch 0 = falseBranch,
// 1 = trueBranch; TillExit 0 = body; Sequence 0 = inner.
using NodePath = std::vector<std::size_t>;

struct Violation {
  ViolationKind kind;
  NodePath path;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

std::string describe(const Violation& violation);

// Static checks. Returns an empty list iff the specification is well formed:
//  - every x_C is preceded (pre-order, left to right) by a read of x;
//  - every loop body contains an Exit not nested in an inner loop;
//  - no Exit occurs outside all loops;
//  - every term sort-checks (branch conditions boolean, outputs integer);
//  - every write has at least one non-ε term.
std::vector<Violation> wellFormed(const Specification& spec, const FunctionRegistry& registry);

// nullptr if `path` does not name an action of `spec`.
const Action* resolvePath(const Specification& spec, const NodePath& path);

std::set<VariableName> variablesOf(const Specification& spec);

}  // namespace iospec
