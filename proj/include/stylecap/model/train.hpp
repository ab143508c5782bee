#ifndef STYLECAP_MODEL_TRAIN_HPP_
#define STYLECAP_MODEL_TRAIN_HPP_

#include <string>
#include <vector>

#include "stylecap/model/net.hpp"

namespace stylecap::model {

// Gradients above clip_norm in global L2 norm are rescaled onto the sphere of
// radius clip_norm, then v <- momentum v + g and p <- p - lr v.
void sgd_momentum_step(ModelParameters& params, ModelParameters& grads, ModelParameters& velocity,
                       const TrainConfig& cfg);

struct LossRow {
  long iteration = 0;
  double recon = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

struct TrainResult {
  ModelParameters params;
  std::vector<LossRow> trace;     // one row per log_every iterations plus the last
  long iterations_run = 0;
  bool diverged = false;          // params hold the last finite state when set
  std::string divergence_message;
};

// Minibatch SGD over uniformly resampled items; deterministic given cfg.seed.
// On numerical divergence the result carries the parameters from before the
// bad step.
TrainResult train(const ModelConfig& mcfg, const TrainConfig& tcfg,
                  const std::vector<TrainItem>& items, const ModelParameters& initial);

// Convenience: init + train.
TrainResult train_from_scratch(const ModelConfig& mcfg, const TrainConfig& tcfg,
                               const std::vector<TrainItem>& items);

std::string loss_trace_csv(const std::vector<LossRow>& rows);

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_TRAIN_HPP_
