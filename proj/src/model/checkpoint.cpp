#include "stylecap/model/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "stylecap/corpus/vocabulary.hpp"
#include "stylecap/latent/prior_io.hpp"

namespace stylecap::model {

namespace {

constexpr int kFormatVersion = 1;

void put_u64_le(std::string* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64_le(const char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

void put_f32_le(std::string* out, float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, sizeof bits);
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

float get_f32_le(const char* p) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

nlohmann::json config_to_json(const ModelConfig& cfg) {
  return nlohmann::json{{"hidden_size", cfg.hidden_size}, {"z_dim", cfg.z_dim},
                        {"embed_dim", cfg.embed_dim},     {"feature_dim", cfg.feature_dim},
                        {"attn_dim", cfg.attn_dim},       {"vocab_size", cfg.vocab_size},
                        {"max_len", cfg.max_len},         {"prior", to_string(cfg.prior)}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig cfg;
  cfg.hidden_size = j.at("hidden_size").get<int>();
  cfg.z_dim = j.at("z_dim").get<int>();
  cfg.embed_dim = j.at("embed_dim").get<int>();
  cfg.feature_dim = j.at("feature_dim").get<int>();
  cfg.attn_dim = j.at("attn_dim").get<int>();
  cfg.vocab_size = j.at("vocab_size").get<int>();
  cfg.max_len = j.at("max_len").get<int>();
  cfg.prior = prior_kind_from_string(j.at("prior").get<std::string>());
  return cfg;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  ck.config.validate();
  if (static_cast<int>(ck.vocab_words.size()) != ck.config.vocab_size) {
    throw std::invalid_argument("checkpoint: vocabulary size disagrees with config");
  }

  // Read-only enumeration of the parameter tensors.
  auto refs = param_refs(const_cast<ModelParameters&>(ck.params));

  nlohmann::json manifest = nlohmann::json::array();
  std::string blobs;
  for (const auto& r : refs) {
    manifest.push_back({{"name", r.name},
                        {"rows", r.rows},
                        {"cols", r.cols},
                        {"offset", static_cast<std::uint64_t>(blobs.size())}});
    for (long i = 0; i < r.count(); ++i) put_f32_le(&blobs, static_cast<float>(r.data[i]));
  }

  nlohmann::json header{{"format", kFormatVersion},
                        {"config", config_to_json(ck.config)},
                        {"iteration", ck.iteration},
                        {"vocab", {{"hash", ck.vocab_hash}, {"words", ck.vocab_words}}},
                        {"prior", ck.has_attribute_prior
                                      ? latent::prior_to_json(ck.attribute_prior)
                                      : nlohmann::json(nullptr)},
                        {"blobs", manifest}};
  const std::string header_text = header.dump();

  std::string out;
  put_u64_le(&out, static_cast<std::uint64_t>(header_text.size()));
  out += header_text;
  out += blobs;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("checkpoint: cannot open: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (bytes.size() < 8) throw std::runtime_error("checkpoint: truncated header length: " + path);

  const std::uint64_t header_len = get_u64_le(bytes.data());
  if (8 + header_len > bytes.size()) {
    throw std::runtime_error("checkpoint: truncated header: " + path);
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(8, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("checkpoint: bad header json: " + std::string(e.what()));
  }
  if (header.at("format").get<int>() != kFormatVersion) {
    throw std::runtime_error("checkpoint: unsupported format version");
  }

  Checkpoint ck;
  ck.config = config_from_json(header.at("config"));
  ck.config.validate();
  ck.iteration = header.at("iteration").get<long>();
  ck.vocab_hash = header.at("vocab").at("hash").get<std::uint64_t>();
  ck.vocab_words = header.at("vocab").at("words").get<std::vector<std::string>>();
  if (static_cast<int>(ck.vocab_words.size()) != ck.config.vocab_size) {
    throw std::runtime_error("checkpoint: vocabulary size disagrees with config");
  }
  const auto vocab = corpus::Vocabulary::from_words(ck.vocab_words);
  if (vocab.hash() != ck.vocab_hash) {
    throw std::runtime_error("checkpoint: vocabulary hash disagrees with the stored word list");
  }
  if (!header.at("prior").is_null()) {
    ck.attribute_prior = latent::prior_from_json(header.at("prior"));
    ck.has_attribute_prior = true;
    if (ck.attribute_prior.z != ck.config.z_dim) {
      throw std::runtime_error("checkpoint: prior z disagrees with config");
    }
  }

  ck.params = ModelParameters::zeros(ck.config);
  auto refs = param_refs(ck.params);
  const auto& manifest = header.at("blobs");
  if (manifest.size() != refs.size()) {
    throw std::runtime_error("checkpoint: blob manifest size disagrees with the model");
  }
  const std::size_t blob_base = 8 + static_cast<std::size_t>(header_len);
  std::uint64_t expected_offset = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& entry = manifest.at(i);
    const auto& r = refs[i];
    if (entry.at("name").get<std::string>() != r.name) {
      throw std::runtime_error("checkpoint: unexpected blob name " +
                               entry.at("name").get<std::string>());
    }
    if (entry.at("rows").get<long>() != r.rows || entry.at("cols").get<long>() != r.cols) {
      throw std::runtime_error("checkpoint: blob shape disagrees with config for " + r.name);
    }
    if (entry.at("offset").get<std::uint64_t>() != expected_offset) {
      throw std::runtime_error("checkpoint: blob offset out of order for " + r.name);
    }
    const std::size_t start = blob_base + expected_offset;
    const std::size_t need = static_cast<std::size_t>(r.count()) * 4;
    if (start + need > bytes.size()) {
      throw std::runtime_error("checkpoint: truncated blob " + r.name);
    }
    for (long k = 0; k < r.count(); ++k) {
      r.data[k] = static_cast<double>(get_f32_le(bytes.data() + start + 4 * static_cast<std::size_t>(k)));
    }
    expected_offset += need;
  }
  if (blob_base + expected_offset != bytes.size()) {
    throw std::runtime_error("checkpoint: trailing bytes after blobs");
  }
  return ck;
}

}  // namespace stylecap::model
