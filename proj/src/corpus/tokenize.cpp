#include "stylecap/corpus/tokenize.hpp"

#include <cctype>
#include <stdexcept>

namespace stylecap::corpus {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty()) {
      out.push_back({word, TokenKind::word, false});
      word.clear();
    }
  };
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      flush_word();
      continue;
    }
    if (is_word_char(c)) {
      word += static_cast<char>(std::tolower(c));
      continue;
    }
    // Hyphen glues two word characters into one token ("sports-minded").
    if (c == '-' && !word.empty() && i + 1 < n && is_word_char(static_cast<unsigned char>(text[i + 1]))) {
      word += '-';
      continue;
    }
    flush_word();
    out.push_back({std::string(1, static_cast<char>(c)), TokenKind::punctuation, false});
  }
  flush_word();
  return out;
}

double rescale_sentiment(double raw) {
  if (!(raw >= -1.0 && raw <= 1.0)) {
    throw std::out_of_range("rescale_sentiment: raw score outside [-1, 1]");
  }
  return (raw + 1.0) / 2.0;
}

}  // namespace stylecap::corpus
