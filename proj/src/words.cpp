#include "iospec/words.hpp"

namespace iospec {

OutputWordSet OutputWordSet::concat(const OutputWordSet& other) const {
  OutputWordSet out;
  for (const auto& u : words_) {
    for (const auto& v : other.words_) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      out.insert(std::move(uv));
    }
  }
  return out;
}

std::string renderWord(const Word& word) {
  if (word.empty()) return "eps";
  if (word.size() == 1) return toString(word.front());
  std::string out = "<";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += toString(word[i]);
  }
  return out + ">";
}

std::string renderWordSet(const OutputWordSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& w : set.words()) {
    if (!first) out += ", ";
    first = false;
    out += renderWord(w);
  }
  return out + "}";
}

}  // namespace iospec
