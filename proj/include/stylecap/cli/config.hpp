#ifndef STYLECAP_CLI_CONFIG_HPP_
#define STYLECAP_CLI_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylecap/decode/constraints.hpp"
#include "stylecap/latent/prior.hpp"
#include "stylecap/model/config.hpp"

namespace stylecap::cli {

// Everything a subcommand needs, layered from defaults, a named profile, a
// key-value config file, and command-line overrides, in that order.
struct RunConfig {
  // Input artifacts.
  std::string corpus;             // captions jsonl
  std::string lexicon;            // word score tsv
  std::string noun_sets;          // category noun tsv
  std::string synonyms;           // attribute synonym tsv
  std::string anps;               // adjective-noun pair tsv
  std::string glove;              // word embedding text file
  std::string detections;         // region metadata json
  std::string features_bin;      // packed region features
  std::string features_manifest;  // image_id -> offset json
  std::string checkpoint;         // model file to load or resume from
  std::string candidates;         // decode jsonl scored by eval
  std::string references;         // reference captions jsonl for eval

  std::string out_dir = ".";

  model::ModelConfig model = model::ModelConfig::desk();
  model::TrainConfig train = model::TrainConfig::desk();

  // Attribute-prior construction.
  std::string prior_init = "sentiwordnet";  // sentiwordnet | sentiglove
  int pca_dims = 10;
  double prior_sigma2 = 1.0;

  // Generation.
  int n = 1;
  double std_dev = 1.0;
  model::DecodeMode decode_mode = model::DecodeMode::greedy;
  decode::ConstraintMode constraint = decode::ConstraintMode::none;
  int beam = 5;
  latent::SentimentCluster cluster = latent::SentimentCluster::neutral;

  // Synthetic corpus generation.
  int synth_templates = 8;
  int synth_images_per_template = 8;
  int synth_regions = 3;
  int synth_attributes_per_region = 1;
  int synth_captions = 1;
  int synth_categories = 10;
  int synth_attributes = 10;
  double synth_noise = 0.1;
  bool synth_polarity = false;

  int min_count = 1;  // vocabulary frequency cutoff

  std::uint64_t seed = 0;
  bool seed_set = false;
};

// Applies the desk or paper model/training profile; throws on other names.
void apply_profile(RunConfig& cfg, const std::string& name);

// Applies one key-value assignment; throws std::invalid_argument on unknown
// keys or unparseable values. The "profile" key applies a whole profile.
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses "key = value" lines ('#' comments and blank lines skipped) and
// applies them in file order on top of cfg.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Defaults, then the config file (when non-empty), then the overrides in
// order.
RunConfig load_run_config(const std::string& config_path,
                          const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace stylecap::cli

#endif  // STYLECAP_CLI_CONFIG_HPP_
