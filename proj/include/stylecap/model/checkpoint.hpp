#ifndef STYLECAP_MODEL_CHECKPOINT_HPP_
#define STYLECAP_MODEL_CHECKPOINT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stylecap/latent/prior.hpp"
#include "stylecap/model/config.hpp"
#include "stylecap/model/params.hpp"

namespace stylecap::model {

// Everything needed to resume training or to generate: configuration,
// parameters, the vocabulary the parameters were trained against, and the
// attribute prior table when one was used.
struct Checkpoint {
  ModelConfig config;
  ModelParameters params;
  std::vector<std::string> vocab_words;
  std::uint64_t vocab_hash = 0;
  long iteration = 0;
  bool has_attribute_prior = false;
  latent::AttributePrior attribute_prior;
};

// Single-file layout: an 8-byte little-endian header length, a JSON header
// (format version, config, iteration, vocabulary, prior table, blob manifest
// of name/rows/cols/offset), then float32 little-endian parameter blobs in
// manifest order. Parameters round-trip through float32, so a save/load/save
// cycle is byte-stable.
void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace stylecap::model

#endif  // STYLECAP_MODEL_CHECKPOINT_HPP_
