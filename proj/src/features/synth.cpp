#include "stylecap/features/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "stylecap/corpus/tokenize.hpp"

namespace stylecap::features {

namespace {

void validate(const SceneSpec& spec) {
  if (spec.num_regions < 1) throw std::invalid_argument("synthesize_scene: num_regions < 1");
  if (spec.feature_dim < 1) throw std::invalid_argument("synthesize_scene: feature_dim < 1");
  if (spec.category_pool.empty()) throw std::invalid_argument("synthesize_scene: empty category pool");
  if (spec.attribute_pool.empty()) throw std::invalid_argument("synthesize_scene: empty attribute pool");
  if (spec.attributes_per_region < 1 ||
      spec.attributes_per_region > static_cast<int>(spec.attribute_pool.size())) {
    throw std::invalid_argument("synthesize_scene: attributes_per_region out of range");
  }
  if (spec.captions < 1) throw std::invalid_argument("synthesize_scene: captions < 1");
}

const std::string& word_for(const std::map<int, std::string>& table, int id, const char* kind) {
  auto it = table.find(id);
  if (it == table.end()) {
    throw std::invalid_argument(std::string("synthesize_scene: no ") + kind + " word for id " +
                                std::to_string(id));
  }
  return it->second;
}

struct RegionLayout {
  int category_id = 0;
  std::vector<int> attribute_ids;
};

std::vector<RegionLayout> sample_layout(Rng& rng, const SceneSpec& spec) {
  std::vector<RegionLayout> layout(static_cast<std::size_t>(spec.num_regions));
  for (auto& slot : layout) {
    slot.category_id = spec.category_pool[rng.uniform_index(spec.category_pool.size())];
    std::vector<int> pool = spec.attribute_pool;
    for (int j = 0; j < spec.attributes_per_region; ++j) {
      const std::size_t pick = static_cast<std::size_t>(j) + rng.uniform_index(pool.size() - static_cast<std::size_t>(j));
      std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
      slot.attribute_ids.push_back(pool[static_cast<std::size_t>(j)]);
    }
    std::sort(slot.attribute_ids.begin(), slot.attribute_ids.end());
  }
  return layout;
}

RegionFeatureSet render_features(Rng& rng, const SceneSpec& spec,
                                 const std::vector<RegionLayout>& layout,
                                 const std::string& image_id) {
  RegionFeatureSet out;
  out.image_id = image_id;
  for (const auto& slot : layout) {
    Region r;
    r.category_id = slot.category_id;
    r.feature = synth_embedding(spec.embedding_seed, "cat:" + std::to_string(slot.category_id),
                                spec.feature_dim);
    for (int a : slot.attribute_ids) {
      r.feature += synth_embedding(spec.embedding_seed, "att:" + std::to_string(a), spec.feature_dim);
      AttributeScore s;
      s.id = a;
      s.score = rng.uniform(0.5, 1.0);
      r.attributes.push_back(s);
    }
    if (spec.noise_std > 0.0) {
      const std::vector<double> noise = rng.normal_vector(static_cast<std::size_t>(spec.feature_dim));
      for (int d = 0; d < spec.feature_dim; ++d) r.feature[d] += spec.noise_std * noise[static_cast<std::size_t>(d)];
    }
    const double x0 = rng.uniform(0.0, 0.8);
    const double y0 = rng.uniform(0.0, 0.8);
    r.box = {x0, y0, x0 + rng.uniform(0.1, 0.2), y0 + rng.uniform(0.1, 0.2)};
    r.confidence = rng.uniform(0.6, 1.0);
    out.regions.push_back(std::move(r));
  }
  return out;
}

corpus::Caption render_caption(const SceneSpec& spec, const std::vector<RegionLayout>& layout,
                               const std::vector<std::size_t>& order, const std::string& image_id,
                               const std::map<int, std::pair<std::string, std::string>>& polarity_words,
                               corpus::Sentiment sentiment) {
  const auto& nouns = spec.category_nouns.empty() ? default_category_nouns() : spec.category_nouns;
  const auto& adjs =
      spec.attribute_adjectives.empty() ? default_attribute_adjectives() : spec.attribute_adjectives;

  std::string text;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& slot = layout[order[pos]];
    if (pos > 0) text += " and";
    text += " a";
    if (sentiment == corpus::Sentiment::neutral) {
      for (int a : slot.attribute_ids) text += " " + word_for(adjs, a, "attribute");
    } else {
      auto it = polarity_words.find(slot.attribute_ids.front());
      if (it == polarity_words.end()) {
        throw std::invalid_argument("synthesize_scene: no polarity words for attribute id " +
                                    std::to_string(slot.attribute_ids.front()));
      }
      text += " " + (sentiment == corpus::Sentiment::positive ? it->second.first : it->second.second);
    }
    text += " " + word_for(nouns, slot.category_id, "category");
  }

  corpus::Caption cap;
  cap.image_id = image_id;
  cap.tokens = corpus::tokenize(text);
  cap.sentiment = sentiment;
  cap.provenance = corpus::Provenance::original;
  return cap;
}

std::vector<corpus::Caption> render_captions(
    Rng& rng, const SceneSpec& spec, const std::vector<RegionLayout>& layout,
    const std::string& image_id,
    const std::map<int, std::pair<std::string, std::string>>& polarity_words) {
  std::vector<corpus::Caption> caps;
  std::vector<std::size_t> order(layout.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int c = 0; c < spec.captions; ++c) {
    if (c > 0) {
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.uniform_index(i)]);
      }
    }
    if (polarity_words.empty()) {
      caps.push_back(render_caption(spec, layout, order, image_id, polarity_words,
                                    corpus::Sentiment::neutral));
    } else {
      caps.push_back(render_caption(spec, layout, order, image_id, polarity_words,
                                    corpus::Sentiment::positive));
      caps.push_back(render_caption(spec, layout, order, image_id, polarity_words,
                                    corpus::Sentiment::negative));
    }
  }
  return caps;
}

}  // namespace

Vec synth_embedding(std::uint64_t embedding_seed, const std::string& name, int dim) {
  Rng rng = Rng::substream(embedding_seed, name);
  const std::vector<double> draws = rng.normal_vector(static_cast<std::size_t>(dim));
  Vec v(dim);
  for (int d = 0; d < dim; ++d) v[d] = draws[static_cast<std::size_t>(d)];
  return v;
}

SynthScene synthesize_scene(Rng& rng, const SceneSpec& spec, const std::string& image_id) {
  validate(spec);
  const std::vector<RegionLayout> layout = sample_layout(rng, spec);
  SynthScene scene;
  scene.features = render_features(rng, spec, layout, image_id);
  scene.captions = render_captions(rng, spec, layout, image_id, {});
  return scene;
}

SynthCorpus synthesize_corpus(Rng& rng, const CorpusSpec& spec) {
  validate(spec.scene);
  if (spec.num_templates < 1) throw std::invalid_argument("synthesize_corpus: num_templates < 1");
  if (spec.images_per_template < 1) {
    throw std::invalid_argument("synthesize_corpus: images_per_template < 1");
  }

  SynthCorpus out;
  int image_index = 0;
  for (int t = 0; t < spec.num_templates; ++t) {
    const std::vector<RegionLayout> layout = sample_layout(rng, spec.scene);
    for (int i = 0; i < spec.images_per_template; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s-%04d", spec.image_id_prefix.c_str(), image_index++);
      const std::string image_id(buf);
      out.features.push_back(render_features(rng, spec.scene, layout, image_id));
      auto caps = render_captions(rng, spec.scene, layout, image_id, spec.polarity_words);
      for (auto& c : caps) out.captions.push_back(std::move(c));
    }
  }
  return out;
}

std::map<int, std::string> default_category_nouns() {
  return {{0, "cat"},   {1, "dog"},   {2, "car"},   {3, "tree"},  {4, "house"},
          {5, "bird"},  {6, "boat"},  {7, "horse"}, {8, "table"}, {9, "flower"}};
}

std::map<int, std::string> default_attribute_adjectives() {
  return {{0, "furry"},  {1, "shiny"}, {2, "tall"},   {3, "small"}, {4, "red"},
          {5, "blue"},   {6, "wooden"}, {7, "bright"}, {8, "dusty"}, {9, "round"}};
}

std::map<int, std::pair<std::string, std::string>> default_polarity_words() {
  return {{0, {"lovely", "ugly"}},    {1, {"great", "broken"}}, {2, {"pretty", "sad"}},
          {3, {"happy", "dirty"}},    {4, {"nice", "bad"}},     {5, {"fine", "poor"}},
          {6, {"sweet", "nasty"}},    {7, {"calm", "grim"}},    {8, {"warm", "bleak"}},
          {9, {"glad", "gloomy"}}};
}

}  // namespace stylecap::features
