#ifndef STYLECAP_MODEL_CONFIG_HPP_
#define STYLECAP_MODEL_CONFIG_HPP_

#include <cstdint>
#include <string>

namespace stylecap::model {

enum class PriorKind { attribute, sentiment };

std::string to_string(PriorKind k);
PriorKind prior_kind_from_string(const std::string& s);

struct ModelConfig {
  int hidden_size = 64;
  int z_dim = 16;
  int embed_dim = 32;
  int feature_dim = 24;
  int attn_dim = 32;
  int vocab_size = 0;  // filled in once the vocabulary is built
  int max_len = 16;
  PriorKind prior = PriorKind::attribute;

  // Desk-scale profile: trains in minutes on one core.
  static ModelConfig desk();
  // Full-scale profile; far beyond what the bundled corpora can train.
  static ModelConfig paper();

  void validate() const;
};

struct TrainConfig {
  double learning_rate = 0.015;
  double momentum = 0.9;
  double clip_norm = 12.5;
  int batch_size = 150;
  long iterations = 1000;
  std::uint64_t seed = 0;
  // Reconstruction-only start: the KL weight ramps 0 -> 1 over the first 20%
  // of iterations, then stays at 1.
  bool kl_anneal = true;
  int log_every = 50;

  static TrainConfig desk();
  static TrainConfig paper();

  void validate() const;
  double kl_weight_at(long iteration) const;
};

enum class DecodeMode { greedy, sample };

std::string to_string(DecodeMode m);
DecodeMode decode_mode_from_string(const std::string& s);

struct GenerateConfig {
  // Prior standard deviation for the z draws; greedy mode ignores it and
  // pins z to the prior mean.
  double std_dev = 1.0;
  int max_len = 16;
  DecodeMode mode = DecodeMode::greedy;
};

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_CONFIG_HPP_
