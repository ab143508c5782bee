#include "stylecap/features/io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace stylecap::features {

namespace {

using nlohmann::json;

void put_i32_le(std::ofstream& out, std::int32_t v) {
  unsigned char b[4];
  const auto u = static_cast<std::uint32_t>(v);
  b[0] = static_cast<unsigned char>(u & 0xff);
  b[1] = static_cast<unsigned char>((u >> 8) & 0xff);
  b[2] = static_cast<unsigned char>((u >> 16) & 0xff);
  b[3] = static_cast<unsigned char>((u >> 24) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f32_le(std::ofstream& out, float v) {
  std::uint32_t u;
  std::memcpy(&u, &v, 4);
  unsigned char b[4];
  b[0] = static_cast<unsigned char>(u & 0xff);
  b[1] = static_cast<unsigned char>((u >> 8) & 0xff);
  b[2] = static_cast<unsigned char>((u >> 16) & 0xff);
  b[3] = static_cast<unsigned char>((u >> 24) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::int32_t get_i32_le(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("feature file truncated");
  const std::uint32_t u = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
                          (static_cast<std::uint32_t>(b[2]) << 16) |
                          (static_cast<std::uint32_t>(b[3]) << 24);
  return static_cast<std::int32_t>(u);
}

float get_f32_le(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("feature file truncated");
  const std::uint32_t u = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
                          (static_cast<std::uint32_t>(b[2]) << 16) |
                          (static_cast<std::uint32_t>(b[3]) << 24);
  float v;
  std::memcpy(&v, &u, 4);
  return v;
}

}  // namespace

void write_feature_file(const std::string& bin_path, const std::string& manifest_path,
                        const std::vector<RegionFeatureSet>& sets) {
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open '" + bin_path + "' for writing");

  json manifest = json::object();
  std::uint64_t offset = 0;
  for (const auto& set : sets) {
    if (manifest.count(set.image_id)) {
      throw std::runtime_error("duplicate image_id '" + set.image_id + "' in feature write");
    }
    const int k = set.k();
    const int d = set.feature_dim();
    manifest[set.image_id] = {{"offset", offset}, {"K", k}, {"D", d}};
    put_i32_le(bin, k);
    put_i32_le(bin, d);
    for (const auto& r : set.regions) {
      if (r.feature.size() != d) {
        throw std::runtime_error("ragged feature dims for image '" + set.image_id + "'");
      }
      for (int j = 0; j < d; ++j) put_f32_le(bin, static_cast<float>(r.feature[j]));
    }
    offset += 8 + static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d) * 4;
  }
  bin.close();

  std::ofstream mf(manifest_path);
  if (!mf) throw std::runtime_error("cannot open '" + manifest_path + "' for writing");
  mf << manifest.dump(2) << "\n";
}

std::map<std::string, FeatureIndexEntry> read_feature_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open '" + manifest_path + "' for reading");
  json j;
  in >> j;
  std::map<std::string, FeatureIndexEntry> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    FeatureIndexEntry e;
    e.offset = it.value().at("offset").get<std::uint64_t>();
    e.k = it.value().at("K").get<int>();
    e.d = it.value().at("D").get<int>();
    out[it.key()] = e;
  }
  return out;
}

Mat read_feature_matrix(const std::string& bin_path, const FeatureIndexEntry& entry) {
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + bin_path + "' for reading");
  in.seekg(static_cast<std::streamoff>(entry.offset));
  const std::int32_t k = get_i32_le(in);
  const std::int32_t d = get_i32_le(in);
  if (k != entry.k || d != entry.d) {
    throw std::runtime_error("feature header disagrees with manifest at offset " +
                             std::to_string(entry.offset));
  }
  Mat m(k, d);
  for (std::int32_t i = 0; i < k; ++i) {
    for (std::int32_t j = 0; j < d; ++j) m(i, j) = static_cast<double>(get_f32_le(in));
  }
  return m;
}

void write_detections_json(const std::string& path, const std::vector<RegionFeatureSet>& sets) {
  json arr = json::array();
  for (const auto& set : sets) {
    json regions = json::array();
    for (const auto& r : set.regions) {
      json atts = json::array();
      for (const auto& a : r.attributes) atts.push_back({{"id", a.id}, {"score", a.score}});
      regions.push_back({{"box", r.box},
                         {"category", r.category_id},
                         {"confidence", r.confidence},
                         {"attributes", atts}});
    }
    arr.push_back({{"image_id", set.image_id}, {"regions", regions}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << arr.dump(2) << "\n";
}

std::vector<RegionFeatureSet> read_detections_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  json arr;
  in >> arr;
  std::vector<RegionFeatureSet> out;
  for (const auto& item : arr) {
    RegionFeatureSet set;
    set.image_id = item.at("image_id").get<std::string>();
    for (const auto& jr : item.at("regions")) {
      Region r;
      const auto& box = jr.at("box");
      if (box.size() != 4) throw std::runtime_error("region box must have 4 coordinates");
      for (std::size_t i = 0; i < 4; ++i) r.box[i] = box[i].get<double>();
      r.category_id = jr.at("category").get<int>();
      r.confidence = jr.at("confidence").get<double>();
      for (const auto& ja : jr.at("attributes")) {
        AttributeScore a;
        a.id = ja.at("id").get<int>();
        a.score = ja.at("score").get<double>();
        r.attributes.push_back(a);
      }
      set.regions.push_back(std::move(r));
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<RegionFeatureSet> read_region_feature_sets(const std::string& detections_path,
                                                       const std::string& bin_path,
                                                       const std::string& manifest_path) {
  std::vector<RegionFeatureSet> sets = read_detections_json(detections_path);
  const auto manifest = read_feature_manifest(manifest_path);
  for (auto& set : sets) {
    auto it = manifest.find(set.image_id);
    if (it == manifest.end()) {
      throw std::runtime_error("no feature manifest entry for image '" + set.image_id + "'");
    }
    if (it->second.k != set.k()) {
      throw std::runtime_error("region count mismatch for image '" + set.image_id + "'");
    }
    const Mat m = read_feature_matrix(bin_path, it->second);
    for (int i = 0; i < set.k(); ++i) {
      set.regions[static_cast<std::size_t>(i)].feature = m.row(i).transpose();
    }
  }
  return sets;
}

}  // namespace stylecap::features
