#pragma once

#include <set>
#include <string>
#include <vector>

#include "iospec/value.hpp"

namespace iospec {

// A word over integers; the empty word is ε.
using Word = std::vector<Integer>;

// A finite set of output words V ⊆ ℤ*. Well-formed sets contain at least one
// non-empty word; isValid() checks that.
class OutputWordSet {
 public:
  OutputWordSet() = default;
  OutputWordSet(std::initializer_list<Word> words) : words_(words) {}
  explicit OutputWordSet(std::set<Word> words) : words_(std::move(words)) {}

  static OutputWordSet singleton(Word word) { return OutputWordSet({std::move(word)}); }

  void insert(Word word) { words_.insert(std::move(word)); }
  bool contains(const Word& word) const { return words_.count(word) != 0; }
  bool containsEpsilon() const { return contains(Word{}); }
  bool isValid() const { return !words_.empty() && !(words_.size() == 1 && containsEpsilon()); }
  bool isSingleton() const { return words_.size() == 1; }
  std::size_t size() const { return words_.size(); }
  const std::set<Word>& words() const { return words_; }

  // Language concatenation {uv | u ∈ this, v ∈ other}.
  OutputWordSet concat(const OutputWordSet& other) const;

  bool operator==(const OutputWordSet&) const = default;
  bool operator<(const OutputWordSet& other) const { return words_ < other.words_; }

 private:
  std::set<Word> words_;
};

// `eps`, a bare integer, or `<v1 v2 ...>` for words of length >= 2.
std::string renderWord(const Word& word);
// `{eps, 3, <1 2>}`; ε first, then words in lexicographic order.
std::string renderWordSet(const OutputWordSet& set);

}  // namespace iospec
