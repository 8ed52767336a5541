#include "iospec/semantics.hpp"

#include <random>
#include <unordered_set>
#include <vector>

namespace iospec {

void GenerationLimits::validate() const {
  if (maxLoopIterations < 1 || maxTraceLength < 1) throw std::invalid_argument("generation limits must be >= 1");
}

void SamplingPolicy::validate() const {
  if (integerRange.lo > integerRange.hi) throw std::invalid_argument("integer range is empty");
  if (naturalRange.lo > naturalRange.hi) throw std::invalid_argument("natural range is empty");
  if (naturalRange.lo < 0) throw std::invalid_argument("natural range must not start below 0");
}

std::string describeDomain(const InputDomain& domain) {
  if (domain.isNamed()) return domain.named() == NamedDomain::Integers ? "ints" : "nats";
  std::string out = "{";
  bool first = true;
  for (const auto& v : domain.values()) {
    if (!first) out += ", ";
    first = false;
    out += toString(v);
  }
  return out + "}";
}

namespace {

struct Cursor {
  const Specification* spec;
  std::size_t index;
};

struct Frame {
  const Specification* body;  // nullptr for the outermost frame
  std::vector<Cursor> cursors;
  std::size_t iterations;
};

// Position in the specification: what is left to do in the current loop
// round, and how every enclosing loop continues.
class Control {
 public:
  explicit Control(const Specification& spec) { frames_.push_back(Frame{nullptr, {Cursor{&spec, 0}}, 1}); }

  // Advances to the next read or write (returned with the cursor past it),
  // resolving branches, loop entry, End and Exit on the way. nullptr once the
  // outermost specification is exhausted.
  const Action* next(const Environment& env, const FunctionRegistry& registry, const GenerationLimits& limits) {
    for (;;) {
      Frame& frame = frames_.back();
      if (frame.cursors.empty()) {
        if (frames_.size() == 1) return nullptr;
        if (++frame.iterations > limits.maxLoopIterations) {
          throw LimitExceeded("loop exceeded " + std::to_string(limits.maxLoopIterations) + " iterations");
        }
        frame.cursors.push_back(Cursor{frame.body, 0});
        continue;
      }
      Cursor& cursor = frame.cursors.back();
      if (cursor.index == cursor.spec->actions.size()) {
        frame.cursors.pop_back();
        continue;
      }
      const Action& action = cursor.spec->actions[cursor.index++];
      if (std::holds_alternative<ReadInput>(action.node) || std::holds_alternative<WriteOutput>(action.node)) {
        return &action;
      }
      if (const auto* b = std::get_if<Branch>(&action.node)) {
        const Value c = evalTerm(b->condition, env, registry);
        const bool* taken = std::get_if<bool>(&c);
        if (taken == nullptr) throw EvalError("branch condition does not evaluate to a boolean");
        frame.cursors.push_back(Cursor{*taken ? &b->trueBranch : &b->falseBranch, 0});
      } else if (const auto* l = std::get_if<TillExit>(&action.node)) {
        frames_.push_back(Frame{&l->body, {Cursor{&l->body, 0}}, 1});
      } else if (std::holds_alternative<Exit>(action.node)) {
        // Discards whatever follows in the current round.
        if (frames_.size() == 1) throw ExitOutsideLoopError();
        frames_.pop_back();
      } else if (const auto* s = std::get_if<Sequence>(&action.node)) {
        frame.cursors.push_back(Cursor{&s->inner, 0});
      }
      // Nop: nothing to do.
    }
  }

  std::string key() const {
    std::string out;
    for (const auto& f : frames_) {
      out += std::to_string(reinterpret_cast<std::uintptr_t>(f.body)) + '#' + std::to_string(f.iterations) + '[';
      for (const auto& c : f.cursors) {
        if (c.index == c.spec->actions.size()) continue;
        out += std::to_string(reinterpret_cast<std::uintptr_t>(c.spec)) + ':' + std::to_string(c.index) + ',';
      }
      out += ']';
    }
    return out;
  }

 private:
  std::vector<Frame> frames_;
};

struct AcceptState {
  Control control;
  std::size_t position;
  Environment env;
};

bool outputMatches(const WriteOutput& write, const TraceStep& step, const Environment& env,
                   const FunctionRegistry& registry) {
  for (const auto& t : write.outputs.terms) {
    const Value v = evalTerm(t, env, registry);
    const Integer* i = std::get_if<Integer>(&v);
    if (i == nullptr) throw EvalError("output term does not evaluate to an integer");
    if (*i == step.value) return true;
  }
  return false;
}

}  // namespace

bool accept(const Specification& spec, const Trace& trace, const FunctionRegistry& registry,
            const GenerationLimits& limits) {
  const auto& steps = trace.steps;
  std::vector<AcceptState> pending{AcceptState{Control(spec), 0, Environment::initial(variablesOf(spec))}};
  std::unordered_set<std::string> decided;
  bool limitHit = false;

  while (!pending.empty()) {
    AcceptState state = std::move(pending.back());
    pending.pop_back();
    try {
      for (;;) {
        const Action* action = state.control.next(state.env, registry, limits);
        if (action == nullptr) {
          if (state.position == steps.size()) return true;
          break;
        }
        const bool haveStep = state.position < steps.size();
        if (const auto* read = std::get_if<ReadInput>(&action->node)) {
          if (!haveStep || !steps[state.position].isInput() || !read->domain.contains(steps[state.position].value)) {
            break;
          }
          state.env = state.env.store(read->var, steps[state.position].value);
          ++state.position;
          continue;
        }
        const auto& write = std::get<WriteOutput>(action->node);
        const bool matches = haveStep && !steps[state.position].isInput() &&
                             outputMatches(write, steps[state.position], state.env, registry);
        if (write.outputs.includesEpsilon && matches) {
          // Both the match and the skip can lead somewhere; remember the
          // skip and go on with the match. Identical decision points reached
          // along different derivations are explored once.
          std::string key =
              state.control.key() + '@' + std::to_string(state.position) + '@' + state.env.fingerprint();
          if (!decided.insert(std::move(key)).second) break;
          pending.push_back(AcceptState{state.control, state.position, state.env});
          ++state.position;
        } else if (matches) {
          ++state.position;
        } else if (!write.outputs.includesEpsilon) {
          break;
        }
      }
    } catch (const LimitExceeded&) {
      limitHit = true;
    }
  }
  if (limitHit) throw LimitExceeded("acceptance check ran into the loop iteration limit");
  return false;
}

namespace {

class FixedInputs {
 public:
  explicit FixedInputs(std::span<const Integer> inputs) : inputs_(inputs) {}

  Integer next(const InputDomain& domain) {
    if (position_ >= inputs_.size()) throw InputsExhausted(position_);
    const Integer& v = inputs_[position_];
    if (!domain.contains(v)) throw InputRejected(position_, v, describeDomain(domain));
    ++position_;
    return v;
  }

  std::size_t remaining() const { return inputs_.size() - position_; }

 private:
  std::span<const Integer> inputs_;
  std::size_t position_ = 0;
};

class RandomInputs {
 public:
  explicit RandomInputs(const SamplingPolicy& policy) : policy_(policy), rng_(policy.seed) {}

  Integer next(const InputDomain& domain) {
    if (!domain.isNamed()) {
      const auto& values = domain.values();
      std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
      return *std::next(values.begin(), static_cast<std::ptrdiff_t>(pick(rng_)));
    }
    const IntegerRange& r = domain.named() == NamedDomain::Integers ? policy_.integerRange : policy_.naturalRange;
    std::uniform_int_distribution<std::int64_t> pick(r.lo, r.hi);
    return Integer(pick(rng_));
  }

  std::size_t remaining() const { return 0; }

 private:
  const SamplingPolicy& policy_;
  std::mt19937_64 rng_;
};

template <typename Inputs>
GeneralizedTrace generate(const Specification& spec, Inputs& inputs, const FunctionRegistry& registry,
                          const GenerationLimits& limits) {
  Control control(spec);
  Environment env = Environment::initial(variablesOf(spec));
  GeneralizedTrace out;
  while (const Action* action = control.next(env, registry, limits)) {
    if (const auto* read = std::get_if<ReadInput>(&action->node)) {
      Integer v = inputs.next(read->domain);
      env = env.store(read->var, v);
      out.steps.push_back(GenStep::in(std::move(v)));
    } else {
      OutputWordSet words = evalOutputSet(std::get<WriteOutput>(action->node).outputs, env, registry);
      if (!out.steps.empty() && !out.steps.back().isInput()) {
        // V ⊙ (!V' t) = !(V·V') t
        auto& previous = out.steps.back().words;
        previous = previous.concat(words);
        if (previous.size() > limits.maxTraceLength) {
          throw LimitExceeded("fused output word set exceeded " + std::to_string(limits.maxTraceLength) + " words");
        }
      } else {
        out.steps.push_back(GenStep::outSet(std::move(words)));
      }
    }
    if (out.steps.size() > limits.maxTraceLength) {
      throw LimitExceeded("trace exceeded " + std::to_string(limits.maxTraceLength) + " steps");
    }
  }
  return out;
}

}  // namespace

GeneralizedTrace interpret(const Specification& spec, std::span<const Integer> inputs,
                           const FunctionRegistry& registry, const GenerationLimits& limits) {
  FixedInputs source(inputs);
  GeneralizedTrace out = generate(spec, source, registry, limits);
  if (source.remaining() != 0) throw SurplusInputs(source.remaining());
  return out;
}

GeneralizedTrace sampleGeneralizedTrace(const Specification& spec, const FunctionRegistry& registry,
                                        const SamplingPolicy& policy, const GenerationLimits& limits) {
  policy.validate();
  RandomInputs source(policy);
  try {
    return generate(spec, source, registry, limits);
  } catch (const LimitExceeded& e) {
    throw GenerationFailure(std::string("could not generate a trace: ") + e.what());
  }
}

}  // namespace iospec
