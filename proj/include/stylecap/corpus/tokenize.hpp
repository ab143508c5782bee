#ifndef STYLECAP_CORPUS_TOKENIZE_HPP_
#define STYLECAP_CORPUS_TOKENIZE_HPP_

#include <string>
#include <vector>

#include "stylecap/corpus/types.hpp"

namespace stylecap::corpus {

// Lowercases and splits text into word and punctuation tokens. Word tokens
// are runs of [a-z0-9] plus interior hyphens ("sports-minded" stays one
// token); every other non-space character becomes its own punctuation token.
// No bos/eos framing is added.
std::vector<Token> tokenize(const std::string& text);

// (-1, 1) sentiment score mapped affinely onto [0, 1]; rejects out-of-range
// input.
double rescale_sentiment(double raw);

}  // namespace stylecap::corpus

#endif  // STYLECAP_CORPUS_TOKENIZE_HPP_
