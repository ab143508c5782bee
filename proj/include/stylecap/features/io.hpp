#ifndef STYLECAP_FEATURES_IO_HPP_
#define STYLECAP_FEATURES_IO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/features/types.hpp"

namespace stylecap::features {

// Region features live in a single binary file: per image an 8-byte header
// (K then D, little-endian int32) followed by K*D row-major float32 values.
// A JSON manifest maps image_id to {offset, K, D}. Boxes, categories,
// confidences and attribute scores travel separately as a JSON array.

struct FeatureIndexEntry {
  std::uint64_t offset = 0;
  int k = 0;
  int d = 0;
};

void write_feature_file(const std::string& bin_path, const std::string& manifest_path,
                        const std::vector<RegionFeatureSet>& sets);

std::map<std::string, FeatureIndexEntry> read_feature_manifest(const std::string& manifest_path);

// One image's K x D matrix; header must agree with the manifest entry.
Mat read_feature_matrix(const std::string& bin_path, const FeatureIndexEntry& entry);

void write_detections_json(const std::string& path, const std::vector<RegionFeatureSet>& sets);

// Feature vectors come back empty; join with the binary file to fill them.
std::vector<RegionFeatureSet> read_detections_json(const std::string& path);

// Detections plus feature matrices, joined by image_id.
std::vector<RegionFeatureSet> read_region_feature_sets(const std::string& detections_path,
                                                       const std::string& bin_path,
                                                       const std::string& manifest_path);

}  // namespace stylecap::features

#endif  // STYLECAP_FEATURES_IO_HPP_
