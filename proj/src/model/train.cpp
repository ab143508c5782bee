#include "stylecap/model/train.hpp"

#include <cstdio>
#include <stdexcept>

namespace stylecap::model {

void sgd_momentum_step(ModelParameters& params, ModelParameters& grads, ModelParameters& velocity,
                       const TrainConfig& cfg) {
  cfg.validate();
  const double norm = global_norm(grads);
  if (norm > cfg.clip_norm) scale_params(grads, cfg.clip_norm / norm);

  const auto v = param_refs(velocity);
  const auto g = param_refs(grads);
  const auto p = param_refs(params);
  for (std::size_t t = 0; t < v.size(); ++t) {
    for (long i = 0; i < v[t].count(); ++i) {
      v[t].data[i] = cfg.momentum * v[t].data[i] + g[t].data[i];
      p[t].data[i] -= cfg.learning_rate * v[t].data[i];
    }
  }
}

TrainResult train(const ModelConfig& mcfg, const TrainConfig& tcfg,
                  const std::vector<TrainItem>& items, const ModelParameters& initial) {
  mcfg.validate();
  tcfg.validate();
  if (items.empty()) throw std::invalid_argument("train: no training items");

  TrainResult result;
  result.params = initial;
  ModelParameters velocity = ModelParameters::zeros(mcfg);
  ModelParameters last_good = initial;

  Rng batch_rng = Rng::substream(tcfg.seed, "train.batch");
  Rng noise_rng = Rng::substream(tcfg.seed, "train.noise");

  for (long iter = 0; iter < tcfg.iterations; ++iter) {
    std::vector<TrainItem> batch;
    batch.reserve(static_cast<std::size_t>(tcfg.batch_size));
    for (int b = 0; b < tcfg.batch_size; ++b) {
      batch.push_back(items[batch_rng.uniform_index(items.size())]);
    }

    const double kl_weight = tcfg.kl_weight_at(iter);
    try {
      BatchGradients bg = gradients(result.params, mcfg, batch, kl_weight, noise_rng);
      last_good = result.params;
      sgd_momentum_step(result.params, bg.grads, velocity, tcfg);
      if (!all_finite(result.params)) {
        throw NumericalDivergenceError("train: parameters became non-finite");
      }
      if (iter % tcfg.log_every == 0 || iter == tcfg.iterations - 1) {
        result.trace.push_back({iter, bg.loss.recon, bg.loss.kl, bg.loss.total});
      }
    } catch (const NumericalDivergenceError& e) {
      result.params = last_good;
      result.diverged = true;
      result.divergence_message = e.what();
      result.iterations_run = iter;
      return result;
    }
    result.iterations_run = iter + 1;
  }
  return result;
}

TrainResult train_from_scratch(const ModelConfig& mcfg, const TrainConfig& tcfg,
                               const std::vector<TrainItem>& items) {
  Rng init_rng = Rng::substream(tcfg.seed, "init");
  return train(mcfg, tcfg, items, ModelParameters::init(mcfg, init_rng));
}

std::string loss_trace_csv(const std::vector<LossRow>& rows) {
  std::string out = "iteration,recon,kl,total\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%.10g,%.10g,%.10g\n", r.iteration, r.recon, r.kl, r.total);
    out += buf;
  }
  return out;
}

}  // namespace stylecap::model
