#ifndef STYLECAP_FEATURES_SYNTH_HPP_
#define STYLECAP_FEATURES_SYNTH_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/corpus/types.hpp"
#include "stylecap/features/types.hpp"
#include "stylecap/rng.hpp"

namespace stylecap::features {

// Stand-in for detector output: region features are built as category
// embedding + attribute embeddings + Gaussian noise, and reference captions
// name the same attributes, so a captioner can recover the correlation.
struct SceneSpec {
  int num_regions = 3;
  int feature_dim = 16;
  std::vector<int> category_pool;
  std::vector<int> attribute_pool;
  int attributes_per_region = 1;
  double noise_std = 0.1;
  std::uint64_t embedding_seed = 911;
  // Word forms used when rendering template captions "a ADJ NOUN and ...".
  std::map<int, std::string> category_nouns;
  std::map<int, std::string> attribute_adjectives;
  // Caption variants per scene; the first lists regions in order, later ones
  // shuffle the region order.
  int captions = 1;
};

struct SynthScene {
  RegionFeatureSet features;
  std::vector<corpus::Caption> captions;
};

// Fixed per-(name, dim) Gaussian embedding, independent of draw order.
Vec synth_embedding(std::uint64_t embedding_seed, const std::string& name, int dim);

SynthScene synthesize_scene(Rng& rng, const SceneSpec& spec, const std::string& image_id);

// Corpus of num_templates fixed (category, attribute) layouts, each rendered
// as images_per_template noisy feature sets with template captions.
struct CorpusSpec {
  SceneSpec scene;
  int num_templates = 8;
  int images_per_template = 8;
  std::string image_id_prefix = "synth";
  // When non-empty, each scene emits a positive and a negative caption per
  // variant: the rendered adjective is replaced by the polarity word pair
  // (positive, negative) of the region's first attribute.
  std::map<int, std::pair<std::string, std::string>> polarity_words;
};

struct SynthCorpus {
  std::vector<RegionFeatureSet> features;
  std::vector<corpus::Caption> captions;
};

SynthCorpus synthesize_corpus(Rng& rng, const CorpusSpec& spec);

// Ten nouns and adjectives for ids 0..9, used when a spec leaves the word
// maps empty.
std::map<int, std::string> default_category_nouns();
std::map<int, std::string> default_attribute_adjectives();
std::map<int, std::pair<std::string, std::string>> default_polarity_words();

}  // namespace stylecap::features

#endif  // STYLECAP_FEATURES_SYNTH_HPP_
