#include "stylecap/model/net.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "stylecap/corpus/vocabulary.hpp"

namespace stylecap::model {

namespace {

constexpr double kLogVarFloor = -13.815510557964274;  // log(1e-6)

Vec sigmoid(const Vec& x) { return (1.0 + (-x.array()).exp()).inverse().matrix(); }

LstmCache lstm_forward(const LstmParams& w, const Vec& x, const LstmState& prev) {
  const long h = prev.h.size();
  LstmCache c;
  c.x = x;
  c.h_prev = prev.h;
  c.c_prev = prev.c;
  const Vec a = w.w_x * x + w.w_h * prev.h + w.b;
  c.i = sigmoid(a.segment(0, h));
  c.f = sigmoid(a.segment(h, h));
  c.o = sigmoid(a.segment(2 * h, h));
  c.g = a.segment(3 * h, h).array().tanh().matrix();
  c.c = c.f.cwiseProduct(prev.c) + c.i.cwiseProduct(c.g);
  c.tanh_c = c.c.array().tanh().matrix();
  c.h = c.o.cwiseProduct(c.tanh_c);
  return c;
}

// Returns dx and folds this step's weight gradients into gw; dh/dc carry the
// loss sensitivity to this step's outputs, dh_prev/dc_prev receive the ones
// for the previous step.
Vec lstm_backward(const LstmParams& w, const LstmCache& c, const Vec& dh, const Vec& dc_in,
                  LstmParams& gw, Vec* dh_prev, Vec* dc_prev) {
  const long h = c.h.size();
  const Vec dc = dc_in + dh.cwiseProduct(c.o).cwiseProduct(
                             (1.0 - c.tanh_c.array().square()).matrix());
  const Vec do_ = dh.cwiseProduct(c.tanh_c);
  const Vec di = dc.cwiseProduct(c.g);
  const Vec df = dc.cwiseProduct(c.c_prev);
  const Vec dg = dc.cwiseProduct(c.i);
  *dc_prev = dc.cwiseProduct(c.f);

  Vec da(4 * h);
  da.segment(0, h) = di.cwiseProduct(c.i).cwiseProduct((1.0 - c.i.array()).matrix());
  da.segment(h, h) = df.cwiseProduct(c.f).cwiseProduct((1.0 - c.f.array()).matrix());
  da.segment(2 * h, h) = do_.cwiseProduct(c.o).cwiseProduct((1.0 - c.o.array()).matrix());
  da.segment(3 * h, h) = dg.cwiseProduct((1.0 - c.g.array().square()).matrix());

  gw.w_x.noalias() += da * c.x.transpose();
  gw.w_h.noalias() += da * c.h_prev.transpose();
  gw.b += da;
  *dh_prev = w.w_h.transpose() * da;
  return w.w_x.transpose() * da;
}

Vec softmax(const Vec& logits) {
  const double m = logits.maxCoeff();
  Vec e = (logits.array() - m).exp().matrix();
  return e / e.sum();
}

// Per-region attribute-mean averages and the renormalized attention-weighted
// prior mean; empty regions carry no mass.
void attribute_prior_mean(const PriorContext& ctx, const Vec& alpha, int z, StepCache* step) {
  const std::size_t k = ctx.attribute_sets.size();
  step->region_mean.assign(k, Vec());
  step->region_nonempty.assign(k, 0);
  step->alpha_mass = 0.0;
  step->mu_prior = Vec::Zero(z);

  for (std::size_t r = 0; r < k; ++r) {
    const auto& ids = ctx.attribute_sets[r];
    if (ids.empty()) continue;
    Vec sum = Vec::Zero(z);
    for (int id : ids) {
      auto it = ctx.attribute_prior->means.find(id);
      if (it == ctx.attribute_prior->means.end()) {
        throw UnknownAttributeError("forward: no prior mean for attribute id " +
                                    std::to_string(id));
      }
      sum += it->second;
    }
    step->region_mean[r] = sum / static_cast<double>(ids.size());
    step->region_nonempty[r] = 1;
    step->alpha_mass += alpha[static_cast<Eigen::Index>(r)];
  }
  if (step->alpha_mass <= 0.0) return;
  for (std::size_t r = 0; r < k; ++r) {
    if (!step->region_nonempty[r]) continue;
    step->mu_prior += (alpha[static_cast<Eigen::Index>(r)] / step->alpha_mass) * step->region_mean[r];
  }
}

using EpsProvider = std::function<Vec(int step)>;

ForwardResult forward_impl(const ModelParameters& p, const ModelConfig& cfg, const TrainItem& item,
                           const EpsProvider& eps_at) {
  cfg.validate();
  if (item.features.rows() < 1) throw std::invalid_argument("forward: no regions");
  if (item.features.cols() != cfg.feature_dim) {
    throw std::invalid_argument("forward: feature dim disagrees with config");
  }
  if (cfg.prior == PriorKind::attribute) {
    if (!item.prior.attribute_prior) throw std::invalid_argument("forward: missing attribute prior");
    if (item.prior.attribute_prior->z != cfg.z_dim) {
      throw std::invalid_argument("forward: prior z disagrees with config");
    }
    if (item.prior.attribute_sets.size() != static_cast<std::size_t>(item.features.rows())) {
      throw std::invalid_argument("forward: attribute sets do not match regions");
    }
  }
  for (int id : item.tokens) {
    if (id < 0 || id >= cfg.vocab_size) throw std::invalid_argument("forward: token id out of range");
  }

  const Vec vbar = item.features.colwise().mean().transpose();
  const int steps = static_cast<int>(item.tokens.size()) + 1;

  LstmState att_state = LstmState::zero(cfg.hidden_size);
  LstmState enc_state = LstmState::zero(cfg.hidden_size);
  LstmState dec_state = LstmState::zero(cfg.hidden_size);

  ForwardResult result;
  result.steps.reserve(static_cast<std::size_t>(steps));

  for (int t = 0; t < steps; ++t) {
    StepCache step;
    step.input_token = t == 0 ? corpus::Vocabulary::kBos : item.tokens[static_cast<std::size_t>(t - 1)];
    step.target_token = t < steps - 1 ? item.tokens[static_cast<std::size_t>(t)]
                                      : corpus::Vocabulary::kEos;

    Vec x_att(cfg.feature_dim + cfg.hidden_size + cfg.embed_dim);
    x_att << vbar, dec_state.h, p.embed.col(step.input_token);
    step.att = lstm_forward(p.att, x_att, att_state);
    att_state.h = step.att.h;
    att_state.c = step.att.c;

    const long k = item.features.rows();
    step.u.resize(static_cast<std::size_t>(k));
    step.scores.resize(k);
    const Vec wh_h = p.attn_wh * step.att.h;
    for (long r = 0; r < k; ++r) {
      step.u[static_cast<std::size_t>(r)] =
          (wh_h + p.attn_wv * item.features.row(r).transpose()).array().tanh().matrix();
      step.scores[r] = p.attn_w.dot(step.u[static_cast<std::size_t>(r)]);
    }
    step.alpha = softmax(step.scores);
    step.vhat = item.features.transpose() * step.alpha;

    if (cfg.prior == PriorKind::attribute) {
      attribute_prior_mean(item.prior, step.alpha, cfg.z_dim, &step);
    } else {
      step.mu_prior = latent::sentiment_prior_mean(item.prior.cluster, cfg.z_dim);
    }

    Vec x_enc(cfg.feature_dim + cfg.z_dim + cfg.hidden_size + cfg.hidden_size);
    x_enc << step.vhat, step.mu_prior, step.att.h, dec_state.h;
    step.enc = lstm_forward(p.enc, x_enc, enc_state);
    enc_state.h = step.enc.h;
    enc_state.c = step.enc.c;

    step.mu_q = p.mu_w * step.enc.h + p.mu_b;
    step.logvar_raw = p.lv_w * step.enc.h + p.lv_b;
    step.logvar = step.logvar_raw.cwiseMax(kLogVarFloor);
    step.eps = eps_at(t);
    step.z = step.mu_q + (0.5 * step.logvar.array()).exp().matrix().cwiseProduct(step.eps);

    const double sigma2 = item.prior.sigma2;
    if (!(sigma2 > 0.0)) throw std::invalid_argument("forward: prior variance must be positive");
    double kl = 0.0;
    for (int d = 0; d < cfg.z_dim; ++d) {
      const double lv = step.logvar[d];
      const double dmu = step.mu_q[d] - step.mu_prior[d];
      kl += 0.5 * (std::log(sigma2) - lv) + (std::exp(lv) + dmu * dmu) / (2.0 * sigma2) - 0.5;
    }
    step.kl = kl;

    Vec x_dec(cfg.feature_dim + cfg.z_dim + cfg.z_dim);
    x_dec << step.vhat, step.z, step.mu_prior;
    step.dec = lstm_forward(p.dec, x_dec, dec_state);
    dec_state.h = step.dec.h;
    dec_state.c = step.dec.c;

    step.probs = softmax(p.out_w * step.dec.h + p.out_b);
    step.nll = -std::log(std::max(step.probs[step.target_token], 1e-300));

    result.trace.nll.push_back(step.nll);
    result.trace.kl.push_back(step.kl);
    result.trace.alpha.push_back(step.alpha);
    result.trace.z.push_back(step.z);
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace

void attend(const ModelParameters& p, const Vec& h_att, const Mat& features, Vec* alpha,
            Vec* vhat) {
  const long k = features.rows();
  if (k < 1) throw std::invalid_argument("attend: no regions");
  Vec scores(k);
  const Vec wh_h = p.attn_wh * h_att;
  for (long r = 0; r < k; ++r) {
    const Vec u = (wh_h + p.attn_wv * features.row(r).transpose()).array().tanh().matrix();
    scores[r] = p.attn_w.dot(u);
  }
  *alpha = softmax(scores);
  *vhat = features.transpose() * (*alpha);
}

ForwardResult forward_teacher_forced(const ModelParameters& p, const ModelConfig& cfg,
                                     const TrainItem& item, Rng& rng) {
  return forward_impl(p, cfg, item, [&](int) {
    Vec eps(cfg.z_dim);
    for (int d = 0; d < cfg.z_dim; ++d) eps[d] = rng.normal();
    return eps;
  });
}

LossBreakdown elbo_loss(const StepTrace& trace, double kl_weight) {
  if (kl_weight < 0.0) throw std::invalid_argument("elbo_loss: negative kl_weight");
  LossBreakdown out;
  for (double v : trace.nll) out.recon += v;
  for (double v : trace.kl) out.kl += v;
  out.total = out.recon + kl_weight * out.kl;
  return out;
}

namespace {

void backward_item(const ModelParameters& p, const ModelConfig& cfg, const TrainItem& item,
                   const ForwardResult& fwd, double kl_weight, ModelParameters* g) {
  const int steps = fwd.trace.steps();
  const int h = cfg.hidden_size;

  Vec dh_att_carry = Vec::Zero(h), dc_att_carry = Vec::Zero(h);
  Vec dh_enc_carry = Vec::Zero(h), dc_enc_carry = Vec::Zero(h);
  Vec dh_dec_carry = Vec::Zero(h), dc_dec_carry = Vec::Zero(h);

  for (int t = steps - 1; t >= 0; --t) {
    const StepCache& step = fwd.steps[static_cast<std::size_t>(t)];

    // Output head.
    Vec dlogits = step.probs;
    dlogits[step.target_token] -= 1.0;
    g->out_w.noalias() += dlogits * step.dec.h.transpose();
    g->out_b += dlogits;

    const Vec dh_dec = p.out_w.transpose() * dlogits + dh_dec_carry;
    Vec dh_dec_prev, dc_dec_prev;
    const Vec dx_dec = lstm_backward(p.dec, step.dec, dh_dec, dc_dec_carry, g->dec, &dh_dec_prev,
                                     &dc_dec_prev);
    dh_dec_carry = dh_dec_prev;
    dc_dec_carry = dc_dec_prev;

    Vec dvhat = dx_dec.segment(0, cfg.feature_dim);
    const Vec dz = dx_dec.segment(cfg.feature_dim, cfg.z_dim);
    Vec dmu_prior = dx_dec.segment(cfg.feature_dim + cfg.z_dim, cfg.z_dim);

    // Reparameterization plus the KL term.
    const double sigma2 = item.prior.sigma2;
    Vec dmu_q = dz;
    Vec dlv = 0.5 * dz.cwiseProduct(step.eps)
                       .cwiseProduct((0.5 * step.logvar.array()).exp().matrix());
    dmu_q += (kl_weight / sigma2) * (step.mu_q - step.mu_prior);
    dlv += (0.5 * kl_weight) * ((step.logvar.array().exp() / sigma2) - 1.0).matrix();
    dmu_prior += (kl_weight / sigma2) * (step.mu_prior - step.mu_q);

    Vec dlv_raw = dlv;
    for (int d = 0; d < cfg.z_dim; ++d) {
      if (step.logvar_raw[d] < kLogVarFloor) dlv_raw[d] = 0.0;
    }

    g->mu_w.noalias() += dmu_q * step.enc.h.transpose();
    g->mu_b += dmu_q;
    g->lv_w.noalias() += dlv_raw * step.enc.h.transpose();
    g->lv_b += dlv_raw;

    const Vec dh_enc = p.mu_w.transpose() * dmu_q + p.lv_w.transpose() * dlv_raw + dh_enc_carry;
    Vec dh_enc_prev, dc_enc_prev;
    const Vec dx_enc = lstm_backward(p.enc, step.enc, dh_enc, dc_enc_carry, g->enc, &dh_enc_prev,
                                     &dc_enc_prev);
    dh_enc_carry = dh_enc_prev;
    dc_enc_carry = dc_enc_prev;

    dvhat += dx_enc.segment(0, cfg.feature_dim);
    dmu_prior += dx_enc.segment(cfg.feature_dim, cfg.z_dim);
    Vec dh_att = dx_enc.segment(cfg.feature_dim + cfg.z_dim, h);
    dh_dec_carry += dx_enc.segment(cfg.feature_dim + cfg.z_dim + h, h);

    // Attention weights collect gradient from the attended feature and, for
    // the attribute prior, from the renormalized prior mean.
    const long k = item.features.rows();
    Vec dalpha = item.features * dvhat;
    if (cfg.prior == PriorKind::attribute && step.alpha_mass > 0.0) {
      for (long r = 0; r < k; ++r) {
        if (!step.region_nonempty[static_cast<std::size_t>(r)]) continue;
        dalpha[r] += dmu_prior.dot(step.region_mean[static_cast<std::size_t>(r)] - step.mu_prior) /
                     step.alpha_mass;
      }
    }

    const double dot = step.alpha.dot(dalpha);
    const Vec dscores = step.alpha.cwiseProduct(dalpha.array().matrix() - Vec::Constant(k, dot));

    for (long r = 0; r < k; ++r) {
      const Vec& u = step.u[static_cast<std::size_t>(r)];
      g->attn_w += dscores[r] * u;
      const Vec du = (dscores[r] * p.attn_w).cwiseProduct((1.0 - u.array().square()).matrix());
      g->attn_wh.noalias() += du * step.att.h.transpose();
      g->attn_wv.noalias() += du * item.features.row(r);
      dh_att += p.attn_wh.transpose() * du;
    }

    dh_att += dh_att_carry;
    Vec dh_att_prev, dc_att_prev;
    const Vec dx_att = lstm_backward(p.att, step.att, dh_att, dc_att_carry, g->att, &dh_att_prev,
                                     &dc_att_prev);
    dh_att_carry = dh_att_prev;
    dc_att_carry = dc_att_prev;

    dh_dec_carry += dx_att.segment(cfg.feature_dim, h);
    g->embed.col(step.input_token) += dx_att.segment(cfg.feature_dim + h, cfg.embed_dim);
  }
}

}  // namespace

BatchGradients gradients(const ModelParameters& p, const ModelConfig& cfg,
                         const std::vector<TrainItem>& batch, double kl_weight, Rng& rng) {
  if (batch.empty()) throw std::invalid_argument("gradients: empty batch");
  BatchGradients out{ModelParameters::zeros(cfg), {}};
  for (const auto& item : batch) {
    const ForwardResult fwd = forward_teacher_forced(p, cfg, item, rng);
    const LossBreakdown loss = elbo_loss(fwd.trace, kl_weight);
    out.loss.recon += loss.recon;
    out.loss.kl += loss.kl;
    out.loss.total += loss.total;
    backward_item(p, cfg, item, fwd, kl_weight, &out.grads);
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  scale_params(out.grads, inv);
  out.loss.recon *= inv;
  out.loss.kl *= inv;
  out.loss.total *= inv;
  if (!std::isfinite(out.loss.total) || !all_finite(out.grads)) {
    throw NumericalDivergenceError("gradients: non-finite loss or gradient");
  }
  return out;
}

double teacher_forced_accuracy(const ModelParameters& p, const ModelConfig& cfg,
                               const std::vector<TrainItem>& items) {
  long correct = 0, total = 0;
  for (const auto& item : items) {
    const ForwardResult fwd =
        forward_impl(p, cfg, item, [&](int) { return Vec::Zero(cfg.z_dim); });
    for (const auto& step : fwd.steps) {
      Eigen::Index argmax = 0;
      step.probs.maxCoeff(&argmax);
      if (static_cast<int>(argmax) == step.target_token) ++correct;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace stylecap::model
