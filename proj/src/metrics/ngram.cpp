#include "stylecap/metrics/ngram.hpp"

#include <stdexcept>

namespace stylecap::metrics {

TokenSeq to_token_seq(const std::vector<corpus::Token>& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind == corpus::TokenKind::bos || t.kind == corpus::TokenKind::eos) continue;
    out.push_back(t.text);
  }
  return out;
}

TokenSeq to_token_seq(const corpus::Caption& c) { return to_token_seq(c.tokens); }

std::map<NGram, long> ngram_counts(const TokenSeq& tokens, int n) {
  if (n < 1) throw std::invalid_argument("ngram_counts: n < 1");
  std::map<NGram, long> counts;
  if (static_cast<std::size_t>(n) > tokens.size()) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    NGram g(tokens.begin() + static_cast<std::ptrdiff_t>(i),
            tokens.begin() + static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(n)));
    ++counts[g];
  }
  return counts;
}

}  // namespace stylecap::metrics
