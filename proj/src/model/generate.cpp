#include "stylecap/model/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "stylecap/corpus/vocabulary.hpp"

namespace stylecap::model {

namespace {

struct GenState {
  LstmState att;
  LstmState dec;
};

Vec log_softmax(const Vec& logits) {
  const double m = logits.maxCoeff();
  const double lse = std::log((logits.array() - m).exp().sum()) + m;
  return (logits.array() - lse).matrix();
}

// One generation-time step: consumes the previous token, advances the
// attention and decoder LSTMs, returns log-probabilities for the next token.
Vec generation_step(const ModelParameters& p, const ModelConfig& cfg, const Mat& features,
                    const Vec& vbar, const PriorContext& prior, int input_token, double std_dev,
                    const Vec& eps, GenState* s, Vec* alpha_out, Vec* z_out) {
  Vec x_att(cfg.feature_dim + cfg.hidden_size + cfg.embed_dim);
  x_att << vbar, s->dec.h, p.embed.col(input_token);
  {
    const Vec a = p.att.w_x * x_att + p.att.w_h * s->att.h + p.att.b;
    const long h = cfg.hidden_size;
    const Vec i = (1.0 + (-a.segment(0, h).array()).exp()).inverse().matrix();
    const Vec f = (1.0 + (-a.segment(h, h).array()).exp()).inverse().matrix();
    const Vec o = (1.0 + (-a.segment(2 * h, h).array()).exp()).inverse().matrix();
    const Vec g = a.segment(3 * h, h).array().tanh().matrix();
    s->att.c = f.cwiseProduct(s->att.c) + i.cwiseProduct(g);
    s->att.h = o.cwiseProduct(s->att.c.array().tanh().matrix());
  }

  Vec alpha, vhat;
  attend(p, s->att.h, features, &alpha, &vhat);

  Vec mu;
  if (cfg.prior == PriorKind::attribute) {
    mu = latent::prior_mean(alpha, prior.attribute_sets, *prior.attribute_prior);
  } else {
    mu = latent::sentiment_prior_mean(prior.cluster, cfg.z_dim);
  }
  const Vec z = mu + std_dev * eps;

  Vec x_dec(cfg.feature_dim + cfg.z_dim + cfg.z_dim);
  x_dec << vhat, z, mu;
  {
    const Vec a = p.dec.w_x * x_dec + p.dec.w_h * s->dec.h + p.dec.b;
    const long h = cfg.hidden_size;
    const Vec i = (1.0 + (-a.segment(0, h).array()).exp()).inverse().matrix();
    const Vec f = (1.0 + (-a.segment(h, h).array()).exp()).inverse().matrix();
    const Vec o = (1.0 + (-a.segment(2 * h, h).array()).exp()).inverse().matrix();
    const Vec g = a.segment(3 * h, h).array().tanh().matrix();
    s->dec.c = f.cwiseProduct(s->dec.c) + i.cwiseProduct(g);
    s->dec.h = o.cwiseProduct(s->dec.c.array().tanh().matrix());
  }

  if (alpha_out) *alpha_out = alpha;
  if (z_out) *z_out = z;
  return log_softmax(p.out_w * s->dec.h + p.out_b);
}

void validate_generation_inputs(const ModelConfig& cfg, const Mat& features,
                                const PriorContext& prior) {
  cfg.validate();
  if (features.rows() < 1) throw std::invalid_argument("generate: no regions");
  if (features.cols() != cfg.feature_dim) {
    throw std::invalid_argument("generate: feature dim disagrees with config");
  }
  if (cfg.prior == PriorKind::attribute) {
    if (!prior.attribute_prior) throw std::invalid_argument("generate: missing attribute prior");
    if (prior.attribute_prior->z != cfg.z_dim) {
      throw std::invalid_argument("generate: prior z disagrees with config");
    }
    if (prior.attribute_sets.size() != static_cast<std::size_t>(features.rows())) {
      throw std::invalid_argument("generate: attribute sets do not match regions");
    }
  }
}

}  // namespace

GenerationResult generate(const ModelParameters& p, const ModelConfig& cfg, const Mat& features,
                          const PriorContext& prior, const GenerateConfig& gcfg, Rng& rng) {
  validate_generation_inputs(cfg, features, prior);
  if (gcfg.max_len < 1) throw std::invalid_argument("generate: max_len < 1");

  const Vec vbar = features.colwise().mean().transpose();
  const bool sampling = gcfg.mode == DecodeMode::sample;
  const double std_dev = sampling ? gcfg.std_dev : 0.0;

  GenState state{LstmState::zero(cfg.hidden_size), LstmState::zero(cfg.hidden_size)};
  GenerationResult result;
  int input = corpus::Vocabulary::kBos;

  for (int t = 0; t < gcfg.max_len + 1; ++t) {
    Vec eps = Vec::Zero(cfg.z_dim);
    if (sampling) {
      for (int d = 0; d < cfg.z_dim; ++d) eps[d] = rng.normal();
    }
    Vec alpha;
    const Vec lp = generation_step(p, cfg, features, vbar, prior, input, std_dev, eps, &state,
                                   &alpha, nullptr);
    result.alphas.push_back(alpha);

    int token;
    if (sampling) {
      const double u = rng.uniform();
      const Vec probs = lp.array().exp().matrix();
      double acc = 0.0;
      token = static_cast<int>(probs.size()) - 1;
      for (Eigen::Index v = 0; v < probs.size(); ++v) {
        acc += probs[v];
        if (u < acc) {
          token = static_cast<int>(v);
          break;
        }
      }
    } else {
      Eigen::Index argmax = 0;
      lp.maxCoeff(&argmax);
      token = static_cast<int>(argmax);
    }

    result.logprob += lp[token];
    if (token == corpus::Vocabulary::kEos) {
      result.ended_with_eos = true;
      break;
    }
    result.tokens.push_back(token);
    if (static_cast<int>(result.tokens.size()) >= gcfg.max_len) break;
    input = token;
  }
  return result;
}

ModelStepScorer::ModelStepScorer(const ModelParameters& p, const ModelConfig& cfg,
                                 const Mat& features, PriorContext prior,
                                 const GenerateConfig& gcfg, Rng& rng)
    : p_(p), cfg_(cfg), features_(features), prior_(std::move(prior)), gcfg_(gcfg) {
  validate_generation_inputs(cfg_, features_, prior_);
  vbar_ = features_.colwise().mean().transpose();
  const bool sampling = gcfg_.mode == DecodeMode::sample;
  eps_.reserve(static_cast<std::size_t>(gcfg_.max_len) + 1);
  for (int t = 0; t < gcfg_.max_len + 1; ++t) {
    Vec eps = Vec::Zero(cfg_.z_dim);
    if (sampling) {
      for (int d = 0; d < cfg_.z_dim; ++d) eps[d] = rng.normal();
    }
    eps_.push_back(std::move(eps));
  }
}

const ModelStepScorer::Node& ModelStepScorer::resolve(const std::vector<int>& prefix) {
  auto it = cache_.find(prefix);
  if (it != cache_.end()) return it->second;
  if (static_cast<int>(prefix.size()) >= static_cast<int>(eps_.size())) {
    throw std::invalid_argument("ModelStepScorer: prefix longer than the planned horizon");
  }

  Node node;
  int input;
  if (prefix.empty()) {
    node.att = LstmState::zero(cfg_.hidden_size);
    node.dec = LstmState::zero(cfg_.hidden_size);
    input = corpus::Vocabulary::kBos;
  } else {
    std::vector<int> parent(prefix.begin(), prefix.end() - 1);
    const Node& base = resolve(parent);
    node.att = base.att;
    node.dec = base.dec;
    input = prefix.back();
  }

  GenState state{node.att, node.dec};
  const double std_dev = gcfg_.mode == DecodeMode::sample ? gcfg_.std_dev : 0.0;
  node.log_probs = generation_step(p_, cfg_, features_, vbar_, prior_, input, std_dev,
                                   eps_[prefix.size()], &state, nullptr, nullptr);
  node.att = state.att;
  node.dec = state.dec;
  return cache_.emplace(prefix, std::move(node)).first->second;
}

Vec ModelStepScorer::log_probs(const std::vector<int>& prefix) { return resolve(prefix).log_probs; }

}  // namespace stylecap::model
