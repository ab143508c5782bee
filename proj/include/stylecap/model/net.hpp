#ifndef STYLECAP_MODEL_NET_HPP_
#define STYLECAP_MODEL_NET_HPP_

#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/latent/prior.hpp"
#include "stylecap/model/params.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::model {

// Where the per-step prior mean comes from. The attribute kind follows the
// attention weights; the sentiment kind is the caption's cluster value.
struct PriorContext {
  const latent::AttributePrior* attribute_prior = nullptr;
  std::vector<std::vector<int>> attribute_sets;  // per region, attribute kind only
  latent::SentimentCluster cluster = latent::SentimentCluster::neutral;
  double sigma2 = 1.0;  // prior variance shared across dimensions
};

// One training example: a caption tied to its image's region features.
struct TrainItem {
  std::string image_id;
  std::vector<int> tokens;  // word ids without bos/eos framing
  Mat features;             // K x D
  PriorContext prior;
};

struct StepTrace {
  std::vector<double> nll;  // per step, of the ground-truth next token
  std::vector<double> kl;   // per step
  std::vector<Vec> alpha;   // per step attention weights
  std::vector<Vec> z;       // per step latent draws
  int steps() const { return static_cast<int>(nll.size()); }
};

// Everything the backward pass needs about one step.
struct LstmCache {
  Vec x;
  Vec i, f, o, g;  // post-activation gates
  Vec h_prev, c_prev;
  Vec c, h, tanh_c;
};

struct StepCache {
  int input_token = 0;
  int target_token = 0;
  LstmCache att, enc, dec;
  std::vector<Vec> u;  // per region tanh(attn_wh h + attn_wv v_k)
  Vec scores;
  Vec alpha;
  Vec vhat;
  Vec mu_prior;
  double alpha_mass = 0.0;            // attention mass on attributed regions
  std::vector<Vec> region_mean;       // per region mean of its attribute means
  std::vector<char> region_nonempty;  // regions contributing to the prior mean
  Vec mu_q, logvar_raw, logvar, eps, z;
  Vec probs;
  double nll = 0.0;
  double kl = 0.0;
};

struct ForwardResult {
  StepTrace trace;
  std::vector<StepCache> steps;
};

// Attention over regions: softmax of w' tanh(attn_wh h + attn_wv v_k), and
// the weighted feature sum.
void attend(const ModelParameters& p, const Vec& h_att, const Mat& features, Vec* alpha, Vec* vhat);

// Teacher-forced pass over bos + tokens + eos: item.tokens.size() + 1 steps.
// Latent draws consume rng, z entries per step in index order.
ForwardResult forward_teacher_forced(const ModelParameters& p, const ModelConfig& cfg,
                                     const TrainItem& item, Rng& rng);

struct LossBreakdown {
  double recon = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

// total = sum nll + kl_weight * sum kl.
LossBreakdown elbo_loss(const StepTrace& trace, double kl_weight);

// Reverse-mode gradients of the mean per-item elbo_loss over the batch.
// Forward draws come from rng exactly as in forward_teacher_forced, item by
// item. Non-finite values raise NumericalDivergenceError.
struct BatchGradients {
  ModelParameters grads;
  LossBreakdown loss;  // averaged over items
};

BatchGradients gradients(const ModelParameters& p, const ModelConfig& cfg,
                         const std::vector<TrainItem>& batch, double kl_weight, Rng& rng);

// Teacher-forced next-token accuracy: fraction of steps whose argmax matches
// the ground truth, over all items, with z pinned to the posterior mean.
double teacher_forced_accuracy(const ModelParameters& p, const ModelConfig& cfg,
                               const std::vector<TrainItem>& items);

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_NET_HPP_
