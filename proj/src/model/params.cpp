#include "stylecap/model/params.hpp"

#include <cmath>

namespace stylecap::model {

LstmState LstmState::zero(int hidden) {
  LstmState s;
  s.h = Vec::Zero(hidden);
  s.c = Vec::Zero(hidden);
  return s;
}

namespace {

Mat uniform_mat(Rng& rng, long rows, long cols) {
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) m(i, j) = rng.uniform(-0.1, 0.1);
  }
  return m;
}

LstmParams init_lstm(Rng& rng, int hidden, int input) {
  LstmParams p;
  p.w_x = uniform_mat(rng, 4 * hidden, input);
  p.w_h = uniform_mat(rng, 4 * hidden, hidden);
  p.b = Vec::Zero(4 * hidden);
  p.b.segment(hidden, hidden).setConstant(1.0);  // forget gate
  return p;
}

LstmParams zero_lstm(int hidden, int input) {
  LstmParams p;
  p.w_x = Mat::Zero(4 * hidden, input);
  p.w_h = Mat::Zero(4 * hidden, hidden);
  p.b = Vec::Zero(4 * hidden);
  return p;
}

}  // namespace

ModelParameters ModelParameters::init(const ModelConfig& cfg, Rng& rng) {
  cfg.validate();
  const int h = cfg.hidden_size;
  ModelParameters p;
  p.embed = uniform_mat(rng, cfg.embed_dim, cfg.vocab_size);
  p.att = init_lstm(rng, h, cfg.feature_dim + h + cfg.embed_dim);
  p.enc = init_lstm(rng, h, cfg.feature_dim + cfg.z_dim + h + h);
  p.dec = init_lstm(rng, h, cfg.feature_dim + cfg.z_dim + cfg.z_dim);
  p.attn_wh = uniform_mat(rng, cfg.attn_dim, h);
  p.attn_wv = uniform_mat(rng, cfg.attn_dim, cfg.feature_dim);
  p.attn_w = uniform_mat(rng, cfg.attn_dim, 1).col(0);
  p.mu_w = uniform_mat(rng, cfg.z_dim, h);
  p.mu_b = Vec::Zero(cfg.z_dim);
  p.lv_w = uniform_mat(rng, cfg.z_dim, h);
  p.lv_b = Vec::Zero(cfg.z_dim);
  p.out_w = uniform_mat(rng, cfg.vocab_size, h);
  p.out_b = Vec::Zero(cfg.vocab_size);
  return p;
}

ModelParameters ModelParameters::zeros(const ModelConfig& cfg) {
  cfg.validate();
  const int h = cfg.hidden_size;
  ModelParameters p;
  p.embed = Mat::Zero(cfg.embed_dim, cfg.vocab_size);
  p.att = zero_lstm(h, cfg.feature_dim + h + cfg.embed_dim);
  p.enc = zero_lstm(h, cfg.feature_dim + cfg.z_dim + h + h);
  p.dec = zero_lstm(h, cfg.feature_dim + cfg.z_dim + cfg.z_dim);
  p.attn_wh = Mat::Zero(cfg.attn_dim, h);
  p.attn_wv = Mat::Zero(cfg.attn_dim, cfg.feature_dim);
  p.attn_w = Vec::Zero(cfg.attn_dim);
  p.mu_w = Mat::Zero(cfg.z_dim, h);
  p.mu_b = Vec::Zero(cfg.z_dim);
  p.lv_w = Mat::Zero(cfg.z_dim, h);
  p.lv_b = Vec::Zero(cfg.z_dim);
  p.out_w = Mat::Zero(cfg.vocab_size, h);
  p.out_b = Vec::Zero(cfg.vocab_size);
  return p;
}

std::vector<ParamRef> param_refs(ModelParameters& p) {
  std::vector<ParamRef> refs;
  auto add_mat = [&](const std::string& name, Mat& m) {
    refs.push_back({name, m.data(), m.rows(), m.cols()});
  };
  auto add_vec = [&](const std::string& name, Vec& v) {
    refs.push_back({name, v.data(), v.size(), 1});
  };
  add_mat("embed", p.embed);
  add_mat("att.w_x", p.att.w_x);
  add_mat("att.w_h", p.att.w_h);
  add_vec("att.b", p.att.b);
  add_mat("enc.w_x", p.enc.w_x);
  add_mat("enc.w_h", p.enc.w_h);
  add_vec("enc.b", p.enc.b);
  add_mat("dec.w_x", p.dec.w_x);
  add_mat("dec.w_h", p.dec.w_h);
  add_vec("dec.b", p.dec.b);
  add_mat("attn_wh", p.attn_wh);
  add_mat("attn_wv", p.attn_wv);
  add_vec("attn_w", p.attn_w);
  add_mat("mu_w", p.mu_w);
  add_vec("mu_b", p.mu_b);
  add_mat("lv_w", p.lv_w);
  add_vec("lv_b", p.lv_b);
  add_mat("out_w", p.out_w);
  add_vec("out_b", p.out_b);
  return refs;
}

double global_norm(ModelParameters& grads) {
  double sq = 0.0;
  for (const auto& r : param_refs(grads)) {
    for (long i = 0; i < r.count(); ++i) sq += r.data[i] * r.data[i];
  }
  return std::sqrt(sq);
}

void axpy(ModelParameters& dst, ModelParameters& src, double scale) {
  const auto d = param_refs(dst);
  const auto s = param_refs(src);
  for (std::size_t t = 0; t < d.size(); ++t) {
    for (long i = 0; i < d[t].count(); ++i) d[t].data[i] += scale * s[t].data[i];
  }
}

void scale_params(ModelParameters& p, double scale) {
  for (const auto& r : param_refs(p)) {
    for (long i = 0; i < r.count(); ++i) r.data[i] *= scale;
  }
}

bool all_finite(ModelParameters& p) {
  for (const auto& r : param_refs(p)) {
    for (long i = 0; i < r.count(); ++i) {
      if (!std::isfinite(r.data[i])) return false;
    }
  }
  return true;
}

}  // namespace stylecap::model
