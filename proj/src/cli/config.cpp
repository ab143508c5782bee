#include "stylecap/cli/config.hpp"

#include <fstream>
#include <stdexcept>

namespace stylecap::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" + value + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad seed for " + key + ": '" + value + "'");
  }
}

}  // namespace

void apply_profile(RunConfig& cfg, const std::string& name) {
  if (name == "desk") {
    cfg.model = model::ModelConfig::desk();
    cfg.train = model::TrainConfig::desk();
  } else if (name == "paper") {
    cfg.model = model::ModelConfig::paper();
    cfg.train = model::TrainConfig::paper();
  } else {
    throw std::invalid_argument("config: unknown profile '" + name + "'");
  }
}

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "profile") { apply_profile(cfg, value); return; }

  if (key == "corpus") { cfg.corpus = value; return; }
  if (key == "lexicon") { cfg.lexicon = value; return; }
  if (key == "noun_sets") { cfg.noun_sets = value; return; }
  if (key == "synonyms") { cfg.synonyms = value; return; }
  if (key == "anps") { cfg.anps = value; return; }
  if (key == "glove") { cfg.glove = value; return; }
  if (key == "detections") { cfg.detections = value; return; }
  if (key == "features_bin") { cfg.features_bin = value; return; }
  if (key == "features_manifest") { cfg.features_manifest = value; return; }
  if (key == "checkpoint") { cfg.checkpoint = value; return; }
  if (key == "candidates") { cfg.candidates = value; return; }
  if (key == "references") { cfg.references = value; return; }
  if (key == "out_dir") { cfg.out_dir = value; return; }

  if (key == "hidden_size") { cfg.model.hidden_size = to_int(key, value); return; }
  if (key == "z_dim") { cfg.model.z_dim = to_int(key, value); return; }
  if (key == "embed_dim") { cfg.model.embed_dim = to_int(key, value); return; }
  if (key == "feature_dim") { cfg.model.feature_dim = to_int(key, value); return; }
  if (key == "attn_dim") { cfg.model.attn_dim = to_int(key, value); return; }
  if (key == "max_len") { cfg.model.max_len = to_int(key, value); return; }
  if (key == "prior") { cfg.model.prior = model::prior_kind_from_string(value); return; }

  if (key == "learning_rate") { cfg.train.learning_rate = to_double(key, value); return; }
  if (key == "momentum") { cfg.train.momentum = to_double(key, value); return; }
  if (key == "clip_norm") { cfg.train.clip_norm = to_double(key, value); return; }
  if (key == "batch_size") { cfg.train.batch_size = to_int(key, value); return; }
  if (key == "iterations") { cfg.train.iterations = to_long(key, value); return; }
  if (key == "kl_anneal") { cfg.train.kl_anneal = to_bool(key, value); return; }
  if (key == "log_every") { cfg.train.log_every = to_int(key, value); return; }

  if (key == "prior_init") {
    if (value != "sentiwordnet" && value != "sentiglove") {
      throw std::invalid_argument("config: prior_init must be sentiwordnet or sentiglove");
    }
    cfg.prior_init = value;
    return;
  }
  if (key == "pca_dims") { cfg.pca_dims = to_int(key, value); return; }
  if (key == "prior_sigma2") { cfg.prior_sigma2 = to_double(key, value); return; }

  if (key == "n") { cfg.n = to_int(key, value); return; }
  if (key == "std") { cfg.std_dev = to_double(key, value); return; }
  if (key == "decode_mode") { cfg.decode_mode = model::decode_mode_from_string(value); return; }
  if (key == "constraint") { cfg.constraint = decode::constraint_mode_from_string(value); return; }
  if (key == "beam") { cfg.beam = to_int(key, value); return; }
  if (key == "cluster") { cfg.cluster = latent::cluster_from_string(value); return; }

  if (key == "synth_templates") { cfg.synth_templates = to_int(key, value); return; }
  if (key == "synth_images_per_template") { cfg.synth_images_per_template = to_int(key, value); return; }
  if (key == "synth_regions") { cfg.synth_regions = to_int(key, value); return; }
  if (key == "synth_attributes_per_region") { cfg.synth_attributes_per_region = to_int(key, value); return; }
  if (key == "synth_captions") { cfg.synth_captions = to_int(key, value); return; }
  if (key == "synth_categories") { cfg.synth_categories = to_int(key, value); return; }
  if (key == "synth_attributes") { cfg.synth_attributes = to_int(key, value); return; }
  if (key == "synth_noise") { cfg.synth_noise = to_double(key, value); return; }
  if (key == "synth_polarity") { cfg.synth_polarity = to_bool(key, value); return; }

  if (key == "min_count") { cfg.min_count = to_int(key, value); return; }

  if (key == "seed") {
    cfg.seed = to_u64(key, value);
    cfg.seed_set = true;
    return;
  }

  throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: " + path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config: " + path + ":" + std::to_string(line_no) +
                                  ": empty key");
    }
    try {
      apply_kv(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

RunConfig load_run_config(const std::string& config_path,
                          const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  if (!config_path.empty()) apply_config_file(cfg, config_path);
  for (const auto& [key, value] : overrides) apply_kv(cfg, key, value);
  return cfg;
}

}  // namespace stylecap::cli
