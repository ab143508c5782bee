#ifndef STYLECAP_METRICS_NGRAM_HPP_
#define STYLECAP_METRICS_NGRAM_HPP_

#include <map>
#include <string>
#include <vector>

#include "stylecap/corpus/types.hpp"

namespace stylecap::metrics {

using TokenSeq = std::vector<std::string>;
using NGram = std::vector<std::string>;

// image_id -> caption list (references, or the n decodes of one image).
using CaptionSets = std::map<std::string, std::vector<TokenSeq>>;

// Token texts without the bos/eos framing.
TokenSeq to_token_seq(const std::vector<corpus::Token>& tokens);
TokenSeq to_token_seq(const corpus::Caption& c);

std::map<NGram, long> ngram_counts(const TokenSeq& tokens, int n);

}  // namespace stylecap::metrics

#endif  // STYLECAP_METRICS_NGRAM_HPP_
