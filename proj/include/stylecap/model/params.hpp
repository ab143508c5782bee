#ifndef STYLECAP_MODEL_PARAMS_HPP_
#define STYLECAP_MODEL_PARAMS_HPP_

#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/model/config.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::model {

// One LSTM's weights; gate rows are stacked input, forget, output, candidate.
struct LstmParams {
  Mat w_x;  // 4H x input
  Mat w_h;  // 4H x H
  Vec b;    // 4H
};

struct LstmState {
  Vec h;
  Vec c;
  static LstmState zero(int hidden);
};

struct ModelParameters {
  Mat embed;  // embed_dim x vocab, one column per word

  LstmParams att;  // input [mean feature; previous decoder h; word embedding]
  LstmParams enc;  // input [attended feature; prior mean; attention h; previous decoder h]
  LstmParams dec;  // input [attended feature; z; prior mean]

  Mat attn_wh;  // attn_dim x hidden
  Mat attn_wv;  // attn_dim x feature_dim
  Vec attn_w;   // attn_dim

  Mat mu_w;  // z x hidden
  Vec mu_b;
  Mat lv_w;  // z x hidden
  Vec lv_b;

  Mat out_w;  // vocab x hidden
  Vec out_b;

  // Uniform(-0.1, 0.1) weights, zero biases, forget-gate biases +1.
  static ModelParameters init(const ModelConfig& cfg, Rng& rng);
  static ModelParameters zeros(const ModelConfig& cfg);
};

// View over one parameter tensor's contiguous storage.
struct ParamRef {
  std::string name;
  double* data;
  long rows;
  long cols;

  long count() const { return rows * cols; }
};

// Fixed enumeration order; gradients built with zeros() line up entry for
// entry.
std::vector<ParamRef> param_refs(ModelParameters& p);

double global_norm(ModelParameters& grads);
// dst += scale * src, entrywise over all tensors.
void axpy(ModelParameters& dst, ModelParameters& src, double scale);
void scale_params(ModelParameters& p, double scale);
bool all_finite(ModelParameters& p);

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_PARAMS_HPP_
