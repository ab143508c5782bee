#include "stylecap/corpus/vocabulary.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stylecap::corpus {

namespace {
const std::vector<std::string> kReserved = {"<pad>", "<bos>", "<eos>", "<unk>"};
}

Vocabulary::Vocabulary() {
  for (const auto& w : kReserved) append(w);
}

void Vocabulary::append(const std::string& word) {
  index_[word] = static_cast<int>(words_.size());
  words_.push_back(word);
}

Vocabulary Vocabulary::build(const std::vector<Caption>& corpus, int min_count) {
  if (min_count < 1) throw std::invalid_argument("build_vocabulary: min_count must be >= 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& cap : corpus) {
    for (const auto& tok : cap.tokens) ++counts[tok.text];
  }
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  for (const auto& [word, count] : items) {
    if (count >= static_cast<std::size_t>(min_count)) v.append(word);
  }
  return v;
}

Vocabulary Vocabulary::from_words(const std::vector<std::string>& words) {
  Vocabulary v;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i < kReserved.size()) {
      if (words[i] != kReserved[i]) {
        throw std::invalid_argument("vocabulary word list does not start with reserved tokens");
      }
      continue;
    }
    v.append(words[i]);
  }
  return v;
}

int Vocabulary::index(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> Vocabulary::encode(const std::vector<Token>& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(index(t.text));
  return ids;
}

std::vector<std::string> Vocabulary::decode(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(word(id));
  return out;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& w : words_) {
    for (unsigned char c : w) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace stylecap::corpus
