#ifndef STYLECAP_CORPUS_VOCABULARY_HPP_
#define STYLECAP_CORPUS_VOCABULARY_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylecap/corpus/types.hpp"

namespace stylecap::corpus {

// Word/index bijection with fixed reserved slots at the front. Regular words
// are ordered by descending corpus frequency, ties broken lexicographically.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;

  Vocabulary();

  static Vocabulary build(const std::vector<Caption>& corpus, int min_count);

  int size() const { return static_cast<int>(words_.size()); }
  // Index of a word, kUnk when absent.
  int index(const std::string& word) const;
  bool contains(const std::string& word) const { return index_.count(word) > 0; }
  const std::string& word(int index) const { return words_.at(static_cast<std::size_t>(index)); }
  const std::vector<std::string>& words() const { return words_; }

  std::vector<int> encode(const std::vector<Token>& tokens) const;
  std::vector<std::string> decode(const std::vector<int>& ids) const;

  // FNV-1a over the ordered word list; used to tie checkpoints to the corpus.
  std::uint64_t hash() const;

  static Vocabulary from_words(const std::vector<std::string>& words);

 private:
  void append(const std::string& word);

  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace stylecap::corpus

#endif  // STYLECAP_CORPUS_VOCABULARY_HPP_
