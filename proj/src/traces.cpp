#include "iospec/traces.hpp"

#include <cctype>
#include <utility>

namespace iospec {

bool GenStep::operator<(const GenStep& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (kind == Kind::In) return value < other.value;
  return words < other.words;
}

std::vector<Integer> Trace::inputs() const {
  std::vector<Integer> out;
  for (const auto& s : steps)
    if (s.isInput()) out.push_back(s.value);
  return out;
}

bool isWellFormed(const GeneralizedTrace& trace) {
  bool previousOut = false;
  for (const auto& s : trace.steps) {
    if (s.isInput()) {
      previousOut = false;
      continue;
    }
    if (previousOut || !s.words.isValid()) return false;
    previousOut = true;
  }
  return true;
}

bool isNormalizedTrace(const GeneralizedTrace& trace) {
  if (!isWellFormed(trace)) return false;
  for (const auto& s : trace.steps) {
    if (!s.isInput() && (!s.words.isSingleton() || s.words.containsEpsilon())) return false;
  }
  return true;
}

std::vector<Integer> extractInputs(const GeneralizedTrace& trace) {
  std::vector<Integer> out;
  for (const auto& s : trace.steps)
    if (s.isInput()) out.push_back(s.value);
  return out;
}

GeneralizedTrace normalize(const Trace& trace) {
  GeneralizedTrace out;
  Word pending;
  auto flush = [&] {
    if (!pending.empty()) out.steps.push_back(GenStep::outSet(OutputWordSet::singleton(std::exchange(pending, {}))));
  };
  for (const auto& s : trace.steps) {
    if (s.isInput()) {
      flush();
      out.steps.push_back(GenStep::in(s.value));
    } else {
      pending.push_back(s.value);
    }
  }
  flush();
  return out;
}

// ----------------------------------------------------------------- covering

namespace {

ObservedStep at(const GeneralizedTrace& t, std::size_t i) {
  if (i >= t.steps.size()) return std::nullopt;
  return t.steps[i];
}

}  // namespace

CoverageResult covers(const GeneralizedTrace& gt, const GeneralizedTrace& nt) {
  if (!isNormalizedTrace(nt)) {
    throw PreconditionViolation("covered trace must be normalized (singleton, non-empty output words)");
  }

  // Positions (nt index, gt index) still to explore; visited guards against
  // re-exploring a position reached through different skip choices.
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, 0}};
  std::set<std::pair<std::size_t, std::size_t>> visited;
  std::optional<CoverageResult> firstFailure;
  auto fail = [&](CoverageResult r) {
    if (!firstFailure) firstFailure = std::move(r);
  };

  while (!pending.empty()) {
    auto [i, j] = pending.back();
    pending.pop_back();
    for (;;) {
      if (!visited.insert({i, j}).second) break;
      const bool ntDone = i >= nt.steps.size();
      const bool gtDone = j >= gt.steps.size();
      if (gtDone) {
        if (ntDone) return Covered{};
        fail(AlignmentMismatch{std::nullopt, at(nt, i)});
        break;
      }
      const GenStep& expected = gt.steps[j];
      if (expected.isInput()) {
        if (!ntDone && nt.steps[i].isInput() && nt.steps[i].value == expected.value) {
          ++i, ++j;
          continue;
        }
        fail(AlignmentMismatch{expected, at(nt, i)});
        break;
      }
      const bool skippable = expected.words.containsEpsilon();
      if (!ntDone && !nt.steps[i].isInput()) {
        const Word& w = *nt.steps[i].words.words().begin();
        if (expected.words.contains(w)) {
          if (skippable) pending.emplace_back(i, j + 1);
          ++i, ++j;
          continue;
        }
        fail(OutputMismatch{w, expected.words});
      } else if (!skippable) {
        fail(AlignmentMismatch{expected, at(nt, i)});
      }
      if (!skippable) break;
      ++j;
    }
  }
  return *firstFailure;
}

std::set<GeneralizedTrace> concretize(const GeneralizedTrace& gt, std::size_t bound) {
  std::set<GeneralizedTrace> results;
  Trace current;
  // Depth-first choice of one word per output set.
  auto go = [&](auto&& self, std::size_t j) -> void {
    if (j == gt.steps.size()) {
      results.insert(normalize(current));
      if (results.size() > bound) {
        throw BoundExceeded("more than " + std::to_string(bound) + " concretizations");
      }
      return;
    }
    const GenStep& s = gt.steps[j];
    if (s.isInput()) {
      current.steps.push_back(TraceStep::in(s.value));
      self(self, j + 1);
      current.steps.pop_back();
      return;
    }
    for (const auto& w : s.words.words()) {
      for (const auto& v : w) current.steps.push_back(TraceStep::out(v));
      self(self, j + 1);
      current.steps.resize(current.steps.size() - w.size());
    }
  };
  go(go, 0);
  return results;
}

// --------------------------------------------------------------- rendering

std::string renderTrace(const Trace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    out += s.isInput() ? '?' : '!';
    out += toString(s.value);
    out += ' ';
  }
  return out + "stop";
}

std::string renderStep(const ExpectedStep& step) {
  if (!step) return "stop";
  if (step->isInput()) return "?" + toString(step->value);
  return "!" + renderWordSet(step->words);
}

std::string renderTrace(const GeneralizedTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    out += renderStep(s);
    out += ' ';
  }
  return out + "stop";
}

std::string renderObserved(const ObservedStep& step) {
  if (!step) return "stop";
  if (step->isInput()) return "?" + toString(step->value);
  if (step->words.isSingleton()) return "!" + renderWord(*step->words.words().begin());
  return "!" + renderWordSet(step->words);
}

std::string renderInputs(const std::vector<Integer>& inputs) {
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out += ' ';
    out += "?" + toString(inputs[i]);
  }
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class TraceLexer {
 public:
  explicit TraceLexer(std::string_view text) : text_(text) {}

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool atEnd() {
    skipSpace();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool acceptWord(std::string_view w) {
    skipSpace();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  Integer integer() {
    skipSpace();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) {
      pos_ = start;
      fail("expected an integer");
    }
    return parseInteger(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& message) const { throw TraceParseError(pos_, message); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void expectStopAndEnd(TraceLexer& lex) {
  if (!lex.acceptWord("stop")) lex.fail("expected '?', '!' or 'stop'");
  if (!lex.atEnd()) lex.fail("unexpected text after 'stop'");
}

Word parseWord(TraceLexer& lex) {
  if (lex.acceptWord("eps")) return {};
  if (lex.accept('<')) {
    Word w;
    while (!lex.accept('>')) w.push_back(lex.integer());
    if (w.size() < 2) lex.fail("bracketed words need at least two symbols");
    return w;
  }
  return {lex.integer()};
}

}  // namespace

Trace parseTrace(std::string_view text) {
  TraceLexer lex(text);
  Trace out;
  for (;;) {
    if (lex.accept('?')) {
      out.steps.push_back(TraceStep::in(lex.integer()));
    } else if (lex.accept('!')) {
      out.steps.push_back(TraceStep::out(lex.integer()));
    } else {
      break;
    }
  }
  expectStopAndEnd(lex);
  return out;
}

GeneralizedTrace parseGeneralizedTrace(std::string_view text) {
  TraceLexer lex(text);
  GeneralizedTrace out;
  for (;;) {
    if (lex.accept('?')) {
      out.steps.push_back(GenStep::in(lex.integer()));
    } else if (lex.accept('!')) {
      lex.expect('{');
      OutputWordSet words;
      do {
        words.insert(parseWord(lex));
      } while (lex.accept(','));
      lex.expect('}');
      out.steps.push_back(GenStep::outSet(std::move(words)));
    } else {
      break;
    }
  }
  expectStopAndEnd(lex);
  return out;
}

}  // namespace iospec
