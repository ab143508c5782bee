#include "stylecap/model/config.hpp"

#include <stdexcept>

namespace stylecap::model {

std::string to_string(PriorKind k) {
  switch (k) {
    case PriorKind::attribute: return "attribute";
    case PriorKind::sentiment: return "sentiment";
  }
  throw std::invalid_argument("to_string: invalid prior kind");
}

PriorKind prior_kind_from_string(const std::string& s) {
  if (s == "attribute") return PriorKind::attribute;
  if (s == "sentiment") return PriorKind::sentiment;
  throw std::invalid_argument("prior_kind_from_string: '" + s + "'");
}

ModelConfig ModelConfig::desk() {
  ModelConfig c;
  c.hidden_size = 64;
  c.z_dim = 16;
  c.embed_dim = 32;
  c.feature_dim = 24;
  c.attn_dim = 32;
  c.max_len = 16;
  return c;
}

ModelConfig ModelConfig::paper() {
  ModelConfig c;
  c.hidden_size = 900;
  c.z_dim = 150;
  c.embed_dim = 300;
  c.feature_dim = 2048;
  c.attn_dim = 512;
  c.max_len = 20;
  return c;
}

void ModelConfig::validate() const {
  if (hidden_size < 1 || z_dim < 1 || embed_dim < 1 || feature_dim < 1 || attn_dim < 1 ||
      vocab_size < 1 || max_len < 1) {
    throw std::invalid_argument("ModelConfig: all dimensions must be >= 1");
  }
}

TrainConfig TrainConfig::desk() {
  TrainConfig c;
  c.learning_rate = 0.05;
  c.momentum = 0.9;
  c.clip_norm = 5.0;
  c.batch_size = 16;
  return c;
}

TrainConfig TrainConfig::paper() {
  TrainConfig c;
  c.learning_rate = 0.015;
  c.momentum = 0.9;
  c.clip_norm = 12.5;
  c.batch_size = 150;
  return c;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate <= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("TrainConfig: momentum outside [0, 1)");
  }
  if (!(clip_norm > 0.0)) throw std::invalid_argument("TrainConfig: clip_norm <= 0");
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size < 1");
  if (iterations < 0) throw std::invalid_argument("TrainConfig: negative iterations");
  if (log_every < 1) throw std::invalid_argument("TrainConfig: log_every < 1");
}

double TrainConfig::kl_weight_at(long iteration) const {
  if (!kl_anneal) return 1.0;
  const long ramp = iterations / 5;
  if (ramp <= 0 || iteration >= ramp) return 1.0;
  return static_cast<double>(iteration) / static_cast<double>(ramp);
}

std::string to_string(DecodeMode m) {
  switch (m) {
    case DecodeMode::greedy: return "greedy";
    case DecodeMode::sample: return "sample";
  }
  throw std::invalid_argument("to_string: invalid decode mode");
}

DecodeMode decode_mode_from_string(const std::string& s) {
  if (s == "greedy") return DecodeMode::greedy;
  if (s == "sample") return DecodeMode::sample;
  throw std::invalid_argument("decode_mode_from_string: '" + s + "'");
}

}  // namespace stylecap::model
