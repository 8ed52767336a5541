#include "support/generators.hpp"

#include <algorithm>
#include <set>

#include "iospec/parser.hpp"

namespace iospec::testing {

const char* const kPromptingSumText = R"(read n : nats
loop {
  if len(x_A) == n_C then {
    exit
  } else {
    write { eps, n_C - len(x_A) }
    read x : ints
  }
}
write { sum(x_A) }
)";

const char* const kSumText = R"(read n : nats
loop { if len(x_A) == n_C then { exit } else { read x : ints } }
write { sum(x_A) }
)";

Specification promptingSumSpec() { return parseSpec(kPromptingSumText); }
Specification sumSpec() { return parseSpec(kSumText); }

std::vector<Integer> ints(std::initializer_list<long long> values) {
  std::vector<Integer> out;
  for (long long v : values) out.emplace_back(v);
  return out;
}

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

class SpecGenerator {
 public:
  SpecGenerator(Rng& rng, const SpecGenOptions& options) : rng_(rng), options_(options) {
    const char* names[] = {"x", "y", "z"};
    for (int i = 0; i < std::max(1, std::min(3, options.maxVariables)); ++i) variables_.push_back(names[i]);
  }

  Specification top() { return sequence(options_.maxDepth, 0); }

 private:
  Specification sequence(int depth, int loopDepth) {
    Specification out;
    const int count = uniform(rng_, depth == options_.maxDepth ? 1 : 0, options_.maxStatements);
    for (int i = 0; i < count; ++i) {
      Specification s = statement(depth, loopDepth);
      out.actions.insert(out.actions.end(), s.actions.begin(), s.actions.end());
    }
    return out;
  }

  Specification statement(int depth, int loopDepth) {
    const int roll = uniform(rng_, 0, depth > 1 ? 9 : 5);
    if (roll <= 2) return read();
    if (roll <= 4) return write();
    if (roll == 5) return loopDepth > 0 && chance(rng_, 0.3) ? exitMarker() : read();
    if (roll <= 7) {
      Term c = boolTerm(2);
      Specification f = sequence(depth - 1, loopDepth);
      Specification t = sequence(depth - 1, loopDepth);
      return branch(std::move(c), std::move(f), std::move(t));
    }
    return loop(depth, loopDepth);
  }

  // Bodies read at least once per round and leave through a guarded exit, so
  // most generated loops terminate for some inputs.
  Specification loop(int depth, int loopDepth) {
    Specification before = sequence(depth - 2 < 0 ? 0 : depth - 2, loopDepth + 1);
    const std::string& v = pick(rng_, variables_);
    Specification readV = readVar(v);
    Term condition = exitCondition(v);
    Specification stay = sequence(depth - 2 < 0 ? 0 : depth - 2, loopDepth + 1);
    Specification leave = seq({chance(rng_, 0.3) ? write() : Specification{}, exitMarker(),
                               chance(rng_, 0.2) ? write() : Specification{}});
    Specification body = seq({before, readV, branch(std::move(condition), std::move(stay), std::move(leave))});
    if (chance(rng_, 0.3)) body = seq({body, write()});
    return tillExit(std::move(body));
  }

  Term exitCondition(const std::string& v) {
    switch (uniform(rng_, 0, 3)) {
      case 0:
        return apply(">=", {apply("len", {all(v)}), constant(uniform(rng_, 1, 3))});
      case 1:
        return apply("<=", {current(v), constant(uniform(rng_, -1, 1))});
      case 2:
        return apply("or", {apply("==", {current(v), constant(0)}), apply(">", {apply("len", {all(v)}), constant(2)})});
      default:
        return boolTerm(1);
    }
  }

  Specification readVar(const std::string& v) {
    read_.insert(v);
    switch (uniform(rng_, 0, 4)) {
      case 0:
        return readInput(v, InputDomain::naturals());
      case 1: {
        std::set<Integer> values;
        const int n = uniform(rng_, 1, 3);
        for (int i = 0; i < n; ++i) values.insert(uniform(rng_, -3, 3));
        return readInput(v, InputDomain::of(std::move(values)));
      }
      default:
        return readInput(v, InputDomain::integers());
    }
  }

  Specification read() { return readVar(pick(rng_, variables_)); }

  Specification write() {
    std::vector<Term> terms;
    const int n = uniform(rng_, 1, 2);
    for (int i = 0; i < n; ++i) terms.push_back(intTerm(2));
    return writeOutput(std::move(terms), chance(rng_, 0.4));
  }

  Term intTerm(int depth) {
    std::vector<std::string> readVars(read_.begin(), read_.end());
    const int roll = uniform(rng_, 0, depth > 0 ? 6 : 3);
    switch (roll) {
      case 0:
        return constant(uniform(rng_, -3, 3));
      case 1:
        if (!readVars.empty()) return current(pick(rng_, readVars));
        return constant(uniform(rng_, 0, 2));
      case 2:
        return apply("len", {all(pick(rng_, variables_))});
      case 3:
        return apply("sum", {all(pick(rng_, variables_))});
      default: {
        static const std::vector<std::string> ops = {"+", "-", "*"};
        return apply(pick(rng_, ops), {intTerm(depth - 1), intTerm(depth - 1)});
      }
    }
  }

  Term boolTerm(int depth) {
    const int roll = uniform(rng_, 0, depth > 0 ? 7 : 4);
    if (roll <= 4) {
      static const std::vector<std::string> ops = {"==", "<", "<=", ">", ">="};
      return apply(pick(rng_, ops), {intTerm(1), intTerm(1)});
    }
    if (roll == 5) return apply("not", {boolTerm(depth - 1)});
    return apply(roll == 6 ? "and" : "or", {boolTerm(depth - 1), boolTerm(depth - 1)});
  }

  Rng& rng_;
  SpecGenOptions options_;
  std::vector<std::string> variables_;
  std::set<std::string> read_;
};

}  // namespace

Specification randomSpec(Rng& rng, const SpecGenOptions& options) { return SpecGenerator(rng, options).top(); }

namespace {

Action reassociateAction(const Action& action, Rng& rng);

Specification reassociateSeq(const Specification& spec, Rng& rng) {
  Specification out;
  std::size_t i = 0;
  while (i < spec.actions.size()) {
    if (chance(rng, 0.2)) out.actions.push_back(Action{Nop{}});
    const std::size_t run = static_cast<std::size_t>(uniform(rng, 1, 3));
    if (run > 1 && chance(rng, 0.5)) {
      Specification inner;
      for (std::size_t k = 0; k < run && i < spec.actions.size(); ++k, ++i) {
        inner.actions.push_back(reassociateAction(spec.actions[i], rng));
      }
      out.actions.push_back(Action{Sequence{reassociateSeq(inner, rng)}});
    } else {
      out.actions.push_back(reassociateAction(spec.actions[i++], rng));
    }
  }
  if (chance(rng, 0.2)) out.actions.push_back(Action{Sequence{Specification{}}});
  return out;
}

Action reassociateAction(const Action& action, Rng& rng) {
  if (const auto* b = std::get_if<Branch>(&action.node)) {
    return Action{Branch{b->condition, reassociateSeq(b->falseBranch, rng), reassociateSeq(b->trueBranch, rng)}};
  }
  if (const auto* l = std::get_if<TillExit>(&action.node)) return Action{TillExit{reassociateSeq(l->body, rng)}};
  return action;
}

}  // namespace

Specification reassociate(const Specification& spec, Rng& rng) { return reassociateSeq(spec, rng); }

Trace randomTrace(Rng& rng, std::size_t maxLength) {
  Trace t;
  const int n = uniform(rng, 0, static_cast<int>(maxLength));
  for (int i = 0; i < n; ++i) {
    const Integer v = uniform(rng, -20, 20);
    t.steps.push_back(chance(rng, 0.5) ? TraceStep::in(v) : TraceStep::out(v));
  }
  return t;
}

GeneralizedTrace randomGeneralizedTrace(Rng& rng, std::size_t maxConcretizations) {
  GeneralizedTrace gt;
  std::size_t product = 1;
  bool lastOut = false;
  const int length = uniform(rng, 0, 8);
  for (int i = 0; i < length; ++i) {
    if (lastOut || chance(rng, 0.5)) {
      gt.steps.push_back(GenStep::in(uniform(rng, -3, 3)));
      lastOut = false;
      continue;
    }
    OutputWordSet words;
    if (chance(rng, 0.5)) words.insert({});
    const int count = uniform(rng, 1, 3);
    for (int k = 0; k < count; ++k) {
      Word w;
      const int len = uniform(rng, 1, chance(rng, 0.3) ? 3 : 1);
      for (int j = 0; j < len; ++j) w.emplace_back(uniform(rng, -2, 2));
      words.insert(std::move(w));
    }
    if (product * words.size() > maxConcretizations) {
      gt.steps.push_back(GenStep::in(uniform(rng, -3, 3)));
      lastOut = false;
      continue;
    }
    product *= words.size();
    gt.steps.push_back(GenStep::outSet(std::move(words)));
    lastOut = true;
  }
  return gt;
}

Trace randomConcretization(const GeneralizedTrace& gt, Rng& rng) {
  Trace t;
  for (const auto& s : gt.steps) {
    if (s.isInput()) {
      t.steps.push_back(TraceStep::in(s.value));
      continue;
    }
    const auto& words = s.words.words();
    auto it = words.begin();
    std::advance(it, uniform(rng, 0, static_cast<int>(words.size()) - 1));
    for (const auto& v : *it) t.steps.push_back(TraceStep::out(v));
  }
  return t;
}

Trace mutate(const Trace& trace, Rng& rng) {
  Trace t = trace;
  const int kind = uniform(rng, 0, 2);
  if (kind == 0 && !t.steps.empty()) {
    auto& s = t.steps[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(t.steps.size()) - 1))];
    s.value += chance(rng, 0.5) ? 1 : -1;
  } else if (kind == 1 || t.steps.empty()) {
    const auto at = static_cast<std::ptrdiff_t>(uniform(rng, 0, static_cast<int>(t.steps.size())));
    const Integer v = uniform(rng, -3, 3);
    t.steps.insert(t.steps.begin() + at, chance(rng, 0.5) ? TraceStep::in(v) : TraceStep::out(v));
  } else {
    t.steps.erase(t.steps.begin() + uniform(rng, 0, static_cast<int>(t.steps.size()) - 1));
  }
  return t;
}

Trace flatten(const GeneralizedTrace& normalized) {
  Trace t;
  for (const auto& s : normalized.steps) {
    if (s.isInput()) {
      t.steps.push_back(TraceStep::in(s.value));
    } else {
      for (const auto& v : *s.words.words().begin()) t.steps.push_back(TraceStep::out(v));
    }
  }
  return t;
}

namespace {

// ⌈t⌉_w over the suffix starting at i.
GeneralizedTrace normalizeFrom(const Trace& t, std::size_t i, Word w) {
  if (i == t.steps.size()) {
    GeneralizedTrace out;
    if (!w.empty()) out.steps.push_back(GenStep::outSet(OutputWordSet{w}));
    return out;
  }
  const TraceStep& s = t.steps[i];
  if (!s.isInput()) {
    w.push_back(s.value);
    return normalizeFrom(t, i + 1, std::move(w));
  }
  GeneralizedTrace out;
  if (!w.empty()) out.steps.push_back(GenStep::outSet(OutputWordSet{w}));
  out.steps.push_back(GenStep::in(s.value));
  GeneralizedTrace rest = normalizeFrom(t, i + 1, {});
  out.steps.insert(out.steps.end(), rest.steps.begin(), rest.steps.end());
  return out;
}

}  // namespace

GeneralizedTrace normalizeOracle(const Trace& trace) { return normalizeFrom(trace, 0, {}); }

// ------------------------------------------------------ scripted programs

namespace {

ScriptedProgram sumLoop(Integer remaining, Integer total) {
  if (remaining <= 0) return ScriptedProgram::write(total, [] { return ScriptedProgram::halt(); });
  return ScriptedProgram::read([=](const Integer& x) { return sumLoop(remaining - 1, total + x); });
}

ScriptedProgram promptingLoop(Integer remaining, Integer total) {
  if (remaining <= 0) return ScriptedProgram::write(total, [] { return ScriptedProgram::halt(); });
  return ScriptedProgram::write(remaining, [=] {
    return ScriptedProgram::read([=](const Integer& x) { return promptingLoop(remaining - 1, total + x); });
  });
}

ScriptedProgram dropLastLoop(Integer remaining, Integer total) {
  if (remaining <= 0) return ScriptedProgram::write(total, [] { return ScriptedProgram::halt(); });
  return ScriptedProgram::read(
      [=](const Integer& x) { return dropLastLoop(remaining - 1, remaining == 1 ? total : total + x); });
}

}  // namespace

ScriptedProgram sumProgram() {
  return ScriptedProgram::read([](const Integer& n) { return sumLoop(n, 0); });
}

ScriptedProgram promptingSumProgram() {
  return ScriptedProgram::read([](const Integer& n) { return promptingLoop(n, 0); });
}

ScriptedProgram readsOneLessProgram() {
  return ScriptedProgram::read([](const Integer& n) { return sumLoop(n - 1, 0); });
}

ScriptedProgram dropsLastSummandProgram() {
  return ScriptedProgram::read([](const Integer& n) { return dropLastLoop(n, 0); });
}

}  // namespace iospec::testing
