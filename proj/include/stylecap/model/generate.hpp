#ifndef STYLECAP_MODEL_GENERATE_HPP_
#define STYLECAP_MODEL_GENERATE_HPP_

#include <map>
#include <vector>

#include "stylecap/decode/beam.hpp"
#include "stylecap/model/net.hpp"

namespace stylecap::model {

struct GenerationResult {
  std::vector<int> tokens;  // emitted word ids, the closing eos not included
  bool ended_with_eos = false;
  double logprob = 0.0;  // log-probability of the emitted sequence, eos included
  std::vector<Vec> alphas;
};

// Prior-driven decoding: the encoder is dropped, z_t drawn around the prior
// mean. Greedy mode pins z to the mean and takes argmax tokens; sample mode
// draws z_t ~ N(mu_t, std^2 I) and tokens from the output distribution.
GenerationResult generate(const ModelParameters& p, const ModelConfig& cfg, const Mat& features,
                          const PriorContext& prior, const GenerateConfig& gcfg, Rng& rng);

// Next-token scorer over the same generation-time network, for beam search.
// Latent noise is drawn once per depth at construction, so every hypothesis
// at a given length shares the same z offset and scores stay comparable;
// recurrent states are cached per prefix.
class ModelStepScorer : public decode::StepScorer {
 public:
  ModelStepScorer(const ModelParameters& p, const ModelConfig& cfg, const Mat& features,
                  PriorContext prior, const GenerateConfig& gcfg, Rng& rng);

  Vec log_probs(const std::vector<int>& prefix) override;

 private:
  struct Node {
    LstmState att;
    LstmState dec;
    Vec log_probs;
  };

  const Node& resolve(const std::vector<int>& prefix);

  const ModelParameters& p_;
  const ModelConfig& cfg_;
  Mat features_;
  Vec vbar_;
  PriorContext prior_;
  GenerateConfig gcfg_;
  std::vector<Vec> eps_;  // per depth
  std::map<std::vector<int>, Node> cache_;
};

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_GENERATE_HPP_
