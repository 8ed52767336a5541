#include "iospec/environment.hpp"

#include <algorithm>

namespace iospec {

Environment Environment::initial(const std::set<VariableName>& variables) {
  Environment env;
  for (const auto& v : variables) env.histories_.emplace(v, nullptr);
  return env;
}

Environment Environment::store(const VariableName& var, Integer value) const {
  Environment next = *this;
  auto& slot = next.histories_[var];
  const std::size_t length = slot ? slot->length + 1 : 1;
  slot = std::make_shared<const Cell>(Cell{std::move(value), length, slot});
  return next;
}

std::vector<Integer> Environment::history(const VariableName& var) const {
  std::vector<Integer> out;
  auto it = histories_.find(var);
  if (it == histories_.end()) return out;
  for (const Cell* c = it->second.get(); c != nullptr; c = c->previous.get()) out.push_back(c->value);
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t Environment::historyLength(const VariableName& var) const {
  auto it = histories_.find(var);
  return it == histories_.end() || !it->second ? 0 : it->second->length;
}

const Integer* Environment::current(const VariableName& var) const {
  auto it = histories_.find(var);
  return it == histories_.end() || !it->second ? nullptr : &it->second->value;
}

std::string Environment::fingerprint() const {
  std::string out;
  for (const auto& [name, cell] : histories_) {
    if (!cell) continue;
    out += name;
    out += '=';
    for (const auto& v : history(name)) {
      out += toString(v);
      out += ',';
    }
    out += ';';
  }
  return out;
}

bool Environment::operator==(const Environment& other) const { return fingerprint() == other.fingerprint(); }

Value evalTerm(const Term& term, const Environment& env, const FunctionRegistry& registry) {
  return std::visit(
      [&](const auto& node) -> Value {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, CurrentVar>) {
          const Integer* v = env.current(node.var);
          if (v == nullptr) throw UnboundCurrent(node.var);
          return *v;
        } else if constexpr (std::is_same_v<T, AllVar>) {
          return env.history(node.var);
        } else {
          const FunctionSignature* sig = registry.find(node.fn);
          if (sig == nullptr) throw EvalError("unknown function '" + node.fn + "'");
          std::vector<Value> args;
          args.reserve(node.args.size());
          for (const auto& a : node.args) args.push_back(evalTerm(a, env, registry));
          if (args.size() != sig->params.size()) throw EvalError("arity mismatch calling '" + node.fn + "'");
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (sortOf(args[i]) != sig->params[i]) throw EvalError("ill-sorted argument to '" + node.fn + "'");
          }
          return sig->eval(args);
        }
      },
      term.node);
}

OutputWordSet evalOutputSet(const OutputTermSet& theta, const Environment& env, const FunctionRegistry& registry) {
  OutputWordSet out;
  if (theta.includesEpsilon) out.insert(Word{});
  for (const auto& t : theta.terms) {
    Value v = evalTerm(t, env, registry);
    auto* i = std::get_if<Integer>(&v);
    if (i == nullptr) throw EvalError("output term does not evaluate to an integer");
    out.insert(Word{std::move(*i)});
  }
  return out;
}

}  // namespace iospec
