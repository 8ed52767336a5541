#include "iospec/ast.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace iospec {

bool Apply::operator==(const Apply& other) const { return fn == other.fn && args == other.args; }

bool Specification::operator==(const Specification& other) const { return actions == other.actions; }

Term constant(Integer value) { return Term{IntConst{std::move(value)}}; }
Term current(VariableName var) { return Term{CurrentVar{std::move(var)}}; }
Term all(VariableName var) { return Term{AllVar{std::move(var)}}; }
Term apply(FunctionName fn, std::vector<Term> args) { return Term{Apply{std::move(fn), std::move(args)}}; }

// ------------------------------------------------------- function registry

namespace {

const Integer& asInt(const Value& v) { return std::get<Integer>(v); }
const std::vector<Integer>& asList(const Value& v) { return std::get<std::vector<Integer>>(v); }
bool asBool(const Value& v) { return std::get<bool>(v); }

template <typename Op>
FunctionSignature arithmetic(Op op) {
  return {{Sort::Integer, Sort::Integer}, Sort::Integer,
          [op](std::span<const Value> a) -> Value { return Integer(op(asInt(a[0]), asInt(a[1]))); }};
}

template <typename Op>
FunctionSignature comparison(Op op) {
  return {{Sort::Integer, Sort::Integer}, Sort::Boolean,
          [op](std::span<const Value> a) -> Value { return static_cast<bool>(op(asInt(a[0]), asInt(a[1]))); }};
}

FunctionRegistry makeBuiltins() {
  FunctionRegistry r;
  r.define("sum", {{Sort::IntegerList}, Sort::Integer, [](std::span<const Value> a) -> Value {
                     Integer total = 0;
                     for (const auto& v : asList(a[0])) total += v;
                     return total;
                   }});
  r.define("len", {{Sort::IntegerList}, Sort::Integer,
                   [](std::span<const Value> a) -> Value { return Integer(asList(a[0]).size()); }});
  r.define("+", arithmetic([](const Integer& x, const Integer& y) { return x + y; }));
  r.define("-", arithmetic([](const Integer& x, const Integer& y) { return x - y; }));
  r.define("*", arithmetic([](const Integer& x, const Integer& y) { return x * y; }));
  r.define("==", comparison([](const Integer& x, const Integer& y) { return x == y; }));
  r.define("<", comparison([](const Integer& x, const Integer& y) { return x < y; }));
  r.define("<=", comparison([](const Integer& x, const Integer& y) { return x <= y; }));
  r.define(">", comparison([](const Integer& x, const Integer& y) { return x > y; }));
  r.define(">=", comparison([](const Integer& x, const Integer& y) { return x >= y; }));
  r.define("and", {{Sort::Boolean, Sort::Boolean}, Sort::Boolean,
                   [](std::span<const Value> a) -> Value { return asBool(a[0]) && asBool(a[1]); }});
  r.define("or", {{Sort::Boolean, Sort::Boolean}, Sort::Boolean,
                  [](std::span<const Value> a) -> Value { return asBool(a[0]) || asBool(a[1]); }});
  r.define("not", {{Sort::Boolean}, Sort::Boolean, [](std::span<const Value> a) -> Value { return !asBool(a[0]); }});
  return r;
}

}  // namespace

const FunctionRegistry& FunctionRegistry::builtins() {
  static const FunctionRegistry registry = makeBuiltins();
  return registry;
}

void FunctionRegistry::define(FunctionName name, FunctionSignature signature) {
  functions_.insert_or_assign(std::move(name), std::move(signature));
}

const FunctionSignature* FunctionRegistry::find(const FunctionName& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

Sort inferSort(const Term& term, const FunctionRegistry& registry) {
  return std::visit(
      [&](const auto& node) -> Sort {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntConst> || std::is_same_v<T, CurrentVar>) {
          return Sort::Integer;
        } else if constexpr (std::is_same_v<T, AllVar>) {
          return Sort::IntegerList;
        } else {
          const FunctionSignature* sig = registry.find(node.fn);
          if (sig == nullptr) throw SortError("unknown function '" + node.fn + "'");
          if (sig->params.size() != node.args.size()) {
            throw SortError("function '" + node.fn + "' expects " + std::to_string(sig->params.size()) +
                            " argument(s), got " + std::to_string(node.args.size()));
          }
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            const Sort got = inferSort(node.args[i], registry);
            if (got != sig->params[i]) {
              throw SortError("argument " + std::to_string(i + 1) + " of '" + node.fn + "' has sort " +
                              std::string(sortName(got)) + ", expected " + std::string(sortName(sig->params[i])));
            }
          }
          return sig->result;
        }
      },
      term.node);
}

// --------------------------------------------------------- specifications

InputDomain InputDomain::of(std::set<Integer> values) {
  if (values.empty()) throw std::invalid_argument("explicit input domain must not be empty");
  return InputDomain(std::move(values));
}

bool InputDomain::contains(const Integer& value) const {
  if (isNamed()) return named() == NamedDomain::Integers || value >= 0;
  return values().count(value) != 0;
}

OutputTermSet OutputTermSet::of(bool includesEpsilon, std::vector<Term> terms) {
  OutputTermSet set{includesEpsilon, {}};
  for (auto& t : terms) {
    if (std::find(set.terms.begin(), set.terms.end(), t) == set.terms.end()) set.terms.push_back(std::move(t));
  }
  return set;
}

namespace {
Specification single(Action action) {
  Specification s;
  s.actions.push_back(std::move(action));
  return s;
}
}  // namespace

Specification readInput(VariableName var, InputDomain domain) {
  return single(Action{ReadInput{std::move(var), std::move(domain)}});
}
Specification writeOutput(OutputTermSet outputs) { return single(Action{WriteOutput{std::move(outputs)}}); }
Specification writeOutput(std::vector<Term> terms, bool includesEpsilon) {
  return writeOutput(OutputTermSet::of(includesEpsilon, std::move(terms)));
}
Specification branch(Term condition, Specification falseBranch, Specification trueBranch) {
  return single(Action{Branch{std::move(condition), std::move(falseBranch), std::move(trueBranch)}});
}
Specification tillExit(Specification body) { return single(Action{TillExit{std::move(body)}}); }
Specification exitMarker() { return single(Action{Exit{}}); }
Specification nop() { return single(Action{Nop{}}); }
Specification nested(Specification inner) { return single(Action{Sequence{std::move(inner)}}); }

Specification seq(std::initializer_list<Specification> parts) {
  Specification out;
  for (const auto& p : parts) out.actions.insert(out.actions.end(), p.actions.begin(), p.actions.end());
  return out;
}

// ------------------------------------------------------------- normalize

namespace {

void flattenInto(const Specification& spec, std::vector<Action>& out) {
  for (const auto& action : spec.actions) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Sequence>) {
            flattenInto(node.inner, out);
          } else if constexpr (std::is_same_v<T, Nop>) {
            // neutral element
          } else if constexpr (std::is_same_v<T, Branch>) {
            out.push_back(Action{Branch{node.condition, normalizeSpec(node.falseBranch), normalizeSpec(node.trueBranch)}});
          } else if constexpr (std::is_same_v<T, TillExit>) {
            out.push_back(Action{TillExit{normalizeSpec(node.body)}});
          } else {
            out.push_back(Action{node});
          }
        },
        action.node);
  }
}

}  // namespace

Specification normalizeSpec(const Specification& spec) {
  Specification out;
  flattenInto(spec, out.actions);
  return out;
}

bool isNormalized(const Specification& spec) {
  for (const auto& action : spec.actions) {
    if (std::holds_alternative<Sequence>(action.node) || std::holds_alternative<Nop>(action.node)) return false;
    if (const auto* b = std::get_if<Branch>(&action.node)) {
      if (!isNormalized(b->falseBranch) || !isNormalized(b->trueBranch)) return false;
    } else if (const auto* l = std::get_if<TillExit>(&action.node)) {
      if (!isNormalized(l->body)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ wellFormed

std::string_view violationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UseBeforeRead:
      return "UseBeforeRead";
    case ViolationKind::MissingExit:
      return "MissingExit";
    case ViolationKind::ExitOutsideLoop:
      return "ExitOutsideLoop";
    case ViolationKind::SortMismatch:
      return "SortMismatch";
    case ViolationKind::EmptyWrite:
      return "EmptyWrite";
  }
  return "?";
}

std::string describe(const Violation& violation) {
  std::ostringstream os;
  os << violationKindName(violation.kind) << " at [";
  for (std::size_t i = 0; i < violation.path.size(); ++i) os << (i ? "." : "") << violation.path[i];
  os << "]";
  if (!violation.detail.empty()) os << ": " << violation.detail;
  return os.str();
}

namespace {

class WellFormedChecker {
 public:
  explicit WellFormedChecker(const FunctionRegistry& registry) : registry_(registry) {}

  std::vector<Violation> run(const Specification& spec) {
    checkSequence(spec, /*loopDepth=*/0);
    return std::move(violations_);
  }

 private:
  void report(ViolationKind kind, std::string detail) { violations_.push_back({kind, path_, std::move(detail)}); }

  void checkTermVariables(const Term& term) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, CurrentVar>) {
            if (read_.count(node.var) == 0) report(ViolationKind::UseBeforeRead, node.var);
          } else if constexpr (std::is_same_v<T, Apply>) {
            for (const auto& arg : node.args) checkTermVariables(arg);
          }
        },
        term.node);
  }

  void checkTerm(const Term& term, Sort expected, std::string_view role) {
    checkTermVariables(term);
    try {
      const Sort got = inferSort(term, registry_);
      if (got != expected) {
        report(ViolationKind::SortMismatch, std::string(role) + " has sort " + std::string(sortName(got)) +
                                                ", expected " + std::string(sortName(expected)));
      }
    } catch (const SortError& e) {
      report(ViolationKind::SortMismatch, e.what());
    }
  }

  void checkChild(std::size_t slot, const Specification& child, int loopDepth) {
    path_.push_back(slot);
    checkSequence(child, loopDepth);
    path_.pop_back();
  }

  void checkSequence(const Specification& spec, int loopDepth) {
    for (std::size_t i = 0; i < spec.actions.size(); ++i) {
      path_.push_back(i);
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ReadInput>) {
              read_.insert(node.var);
            } else if constexpr (std::is_same_v<T, WriteOutput>) {
              if (node.outputs.terms.empty()) report(ViolationKind::EmptyWrite, "write needs at least one non-eps term");
              for (const auto& t : node.outputs.terms) checkTerm(t, Sort::Integer, "output term");
            } else if constexpr (std::is_same_v<T, Branch>) {
              checkTerm(node.condition, Sort::Boolean, "branch condition");
              checkChild(0, node.falseBranch, loopDepth);
              checkChild(1, node.trueBranch, loopDepth);
            } else if constexpr (std::is_same_v<T, TillExit>) {
              if (!bindsExit(node.body)) report(ViolationKind::MissingExit, "loop body has no reachable exit");
              checkChild(0, node.body, loopDepth + 1);
            } else if constexpr (std::is_same_v<T, Exit>) {
              if (loopDepth == 0) report(ViolationKind::ExitOutsideLoop, "exit outside of any loop");
            } else if constexpr (std::is_same_v<T, Sequence>) {
              checkChild(0, node.inner, loopDepth);
            }
          },
          spec.actions[i].node);
      path_.pop_back();
    }
  }

  // True if `body` contains an Exit that is not inside a nested loop.
  static bool bindsExit(const Specification& body) {
    for (const auto& action : body.actions) {
      if (std::holds_alternative<Exit>(action.node)) return true;
      if (const auto* b = std::get_if<Branch>(&action.node)) {
        if (bindsExit(b->falseBranch) || bindsExit(b->trueBranch)) return true;
      } else if (const auto* s = std::get_if<Sequence>(&action.node)) {
        if (bindsExit(s->inner)) return true;
      }
    }
    return false;
  }

  const FunctionRegistry& registry_;
  std::set<VariableName> read_;
  NodePath path_;
  std::vector<Violation> violations_;
};

}  // namespace

std::vector<Violation> wellFormed(const Specification& spec, const FunctionRegistry& registry) {
  return WellFormedChecker(registry).run(spec);
}

const Action* resolvePath(const Specification& spec, const NodePath& path) {
  if (path.empty() || path.size() % 2 == 0) return nullptr;
  const Specification* current = &spec;
  const Action* action = nullptr;
  for (std::size_t i = 0; i < path.size(); i += 2) {
    if (path[i] >= current->actions.size()) return nullptr;
    action = &current->actions[path[i]];
    if (i + 1 == path.size()) break;
    const std::size_t slot = path[i + 1];
    if (const auto* b = std::get_if<Branch>(&action->node)) {
      if (slot > 1) return nullptr;
      current = slot == 0 ? &b->falseBranch : &b->trueBranch;
    } else if (const auto* l = std::get_if<TillExit>(&action->node)) {
      if (slot != 0) return nullptr;
      current = &l->body;
    } else if (const auto* s = std::get_if<Sequence>(&action->node)) {
      if (slot != 0) return nullptr;
      current = &s->inner;
    } else {
      return nullptr;
    }
  }
  return action;
}

// -------------------------------------------------------------- variables

namespace {

void collectTermVariables(const Term& term, std::set<VariableName>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, CurrentVar> || std::is_same_v<T, AllVar>) {
          out.insert(node.var);
        } else if constexpr (std::is_same_v<T, Apply>) {
          for (const auto& arg : node.args) collectTermVariables(arg, out);
        }
      },
      term.node);
}

void collectVariables(const Specification& spec, std::set<VariableName>& out) {
  for (const auto& action : spec.actions) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ReadInput>) {
            out.insert(node.var);
          } else if constexpr (std::is_same_v<T, WriteOutput>) {
            for (const auto& t : node.outputs.terms) collectTermVariables(t, out);
          } else if constexpr (std::is_same_v<T, Branch>) {
            collectTermVariables(node.condition, out);
            collectVariables(node.falseBranch, out);
            collectVariables(node.trueBranch, out);
          } else if constexpr (std::is_same_v<T, TillExit>) {
            collectVariables(node.body, out);
          } else if constexpr (std::is_same_v<T, Sequence>) {
            collectVariables(node.inner, out);
          }
        },
        action.node);
  }
}

}  // namespace

std::set<VariableName> variablesOf(const Specification& spec) {
  std::set<VariableName> out;
  collectVariables(spec, out);
  return out;
}

}  // namespace iospec
