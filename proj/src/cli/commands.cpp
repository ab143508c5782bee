#include "stylecap/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stylecap/corpus/augment.hpp"
#include "stylecap/corpus/io.hpp"
#include "stylecap/corpus/tokenize.hpp"
#include "stylecap/corpus/vocabulary.hpp"
#include "stylecap/decode/beam.hpp"
#include "stylecap/features/io.hpp"
#include "stylecap/features/synth.hpp"
#include "stylecap/latent/prior.hpp"
#include "stylecap/metrics/report.hpp"
#include "stylecap/metrics/senti.hpp"
#include "stylecap/model/checkpoint.hpp"
#include "stylecap/model/generate.hpp"
#include "stylecap/model/train.hpp"

namespace stylecap::cli {

namespace fs = std::filesystem;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_input(const std::string& path, const std::string& what) {
  require(!path.empty(), what + " path is not configured");
  require(fs::exists(path), what + " not found: " + path);
}

void require_seed(const RunConfig& cfg) {
  require(cfg.seed_set, "seed is mandatory (--seed or a seed config entry)");
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

std::vector<corpus::Caption> read_corpus(const std::string& path) {
  return corpus::read_captions_jsonl(path, [&](std::size_t line_no, const std::string& message) {
    std::cerr << path << ":" << line_no << ": " << message << "\n";
  });
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

// Attribute display names, keyed by id, read off the synonym table.
std::map<int, std::string> attribute_names_from_synonyms(
    const std::vector<corpus::SynonymSet>& sets) {
  std::map<int, std::string> names;
  for (const auto& s : sets) names[s.attribute_id] = s.canonical;
  return names;
}

latent::AttributePrior build_attribute_prior(const RunConfig& cfg,
                                             const std::map<int, std::string>& names) {
  latent::AttributePrior prior;
  const auto lexicon = corpus::read_lexicon_tsv(cfg.lexicon);
  if (cfg.prior_init == "sentiwordnet") {
    prior = latent::init_sentiwordnet(lexicon, names, cfg.model.z_dim);
  } else {
    require_input(cfg.glove, "glove");
    const auto glove = corpus::read_glove_text(cfg.glove);
    std::vector<std::string> warnings;
    prior = latent::init_sentiglove(glove, names, lexicon, cfg.pca_dims, cfg.model.z_dim,
                                    &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  }
  prior.sigma2 = cfg.prior_sigma2;
  return prior;
}

// Attribute ids seen in the detections but absent from the prior table.
std::set<int> unknown_attribute_ids(const std::vector<features::RegionFeatureSet>& sets,
                                    const latent::AttributePrior& prior) {
  std::set<int> unknown;
  for (const auto& set : sets) {
    for (const auto& region : set.regions) {
      for (const auto& a : region.attributes) {
        if (prior.means.count(a.id) == 0) unknown.insert(a.id);
      }
    }
  }
  return unknown;
}

std::string caption_from_ids(const std::vector<int>& ids, const corpus::Vocabulary& vocab) {
  std::string text;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == corpus::Vocabulary::kEos && i + 1 == ids.size()) break;
    if (!text.empty()) text += ' ';
    text += vocab.word(ids[i]);
  }
  return text;
}

metrics::TokenSeq token_seq_from_text(const std::string& text) {
  return metrics::to_token_seq(corpus::tokenize(text));
}

}  // namespace

int cmd_features_synth(const RunConfig& cfg) {
  return run_guarded([&]() {
    require_seed(cfg);
    require(cfg.synth_categories >= 1 && cfg.synth_categories <= 10,
            "synth_categories must be between 1 and 10");
    require(cfg.synth_attributes >= 1 && cfg.synth_attributes <= 10,
            "synth_attributes must be between 1 and 10");

    features::CorpusSpec spec;
    spec.scene.num_regions = cfg.synth_regions;
    spec.scene.feature_dim = cfg.model.feature_dim;
    for (int c = 0; c < cfg.synth_categories; ++c) spec.scene.category_pool.push_back(c);
    for (int a = 0; a < cfg.synth_attributes; ++a) spec.scene.attribute_pool.push_back(a);
    spec.scene.attributes_per_region = cfg.synth_attributes_per_region;
    spec.scene.noise_std = cfg.synth_noise;
    spec.scene.category_nouns = features::default_category_nouns();
    spec.scene.attribute_adjectives = features::default_attribute_adjectives();
    spec.scene.captions = cfg.synth_captions;
    spec.num_templates = cfg.synth_templates;
    spec.images_per_template = cfg.synth_images_per_template;
    if (cfg.synth_polarity) spec.polarity_words = features::default_polarity_words();

    Rng rng = Rng::substream(cfg.seed, "synth");
    const features::SynthCorpus corpus_out = features::synthesize_corpus(rng, spec);

    corpus::write_captions_jsonl(out_path(cfg, "captions.jsonl"), corpus_out.captions);
    features::write_detections_json(out_path(cfg, "detections.json"), corpus_out.features);
    features::write_feature_file(out_path(cfg, "features.bin"),
                                 out_path(cfg, "features_manifest.json"), corpus_out.features);

    // Support files matched to the synthetic vocabulary, so the corpus can
    // drive the rest of the pipeline unmodified.
    corpus::SentimentLexicon lexicon;
    std::vector<corpus::SynonymSet> synonym_sets;
    std::vector<corpus::ObjectNounSet> noun_sets;
    corpus::AnpTable anps;
    const auto polarity = features::default_polarity_words();
    for (int a : spec.scene.attribute_pool) {
      const std::string& adjective = spec.scene.attribute_adjectives.at(a);
      lexicon.scores[adjective] = 0.5;
      corpus::SynonymSet syn;
      syn.attribute_id = a;
      syn.canonical = adjective;
      syn.synonyms.insert(adjective);
      if (cfg.synth_polarity) {
        const auto& [pos, neg] = polarity.at(a);
        lexicon.scores[pos] = 0.9;
        lexicon.scores[neg] = 0.1;
        syn.synonyms.insert(pos);
        syn.synonyms.insert(neg);
      }
      synonym_sets.push_back(std::move(syn));
    }
    for (int c : spec.scene.category_pool) {
      const std::string& noun = spec.scene.category_nouns.at(c);
      noun_sets.push_back({c, {noun}});
      for (int a : spec.scene.attribute_pool) {
        anps.entries[noun][corpus::Sentiment::neutral].insert(
            spec.scene.attribute_adjectives.at(a));
        if (cfg.synth_polarity) {
          const auto& [pos, neg] = polarity.at(a);
          anps.entries[noun][corpus::Sentiment::positive].insert(pos);
          anps.entries[noun][corpus::Sentiment::negative].insert(neg);
        }
      }
    }
    corpus::write_lexicon_tsv(out_path(cfg, "lexicon.tsv"), lexicon);
    corpus::write_synonym_sets_tsv(out_path(cfg, "synonyms.tsv"), synonym_sets);
    corpus::write_noun_sets_tsv(out_path(cfg, "noun_sets.tsv"), noun_sets);
    corpus::write_anp_table_tsv(out_path(cfg, "anps.tsv"), anps);

    std::cout << "synthesized " << corpus_out.features.size() << " images, "
              << corpus_out.captions.size() << " captions into " << cfg.out_dir << "\n";
    return kExitOk;
  });
}

int cmd_augment(const RunConfig& cfg) {
  return run_guarded([&]() {
    require_seed(cfg);
    require_input(cfg.corpus, "corpus");

    const bool attribute_pass = !cfg.detections.empty();
    const bool anp_pass = !cfg.anps.empty();
    require(attribute_pass || anp_pass,
            "nothing to augment: configure detections (attribute pass) or anps (anp pass)");
    if (attribute_pass) {
      require_input(cfg.detections, "detections");
      require_input(cfg.noun_sets, "noun_sets");
      require_input(cfg.synonyms, "synonyms");
      require_input(cfg.lexicon, "lexicon");
    }
    if (anp_pass) require_input(cfg.anps, "anps");

    const auto captions = read_corpus(cfg.corpus);
    Rng rng = Rng::substream(cfg.seed, "augment");

    nlohmann::json summary;
    summary["captions_in"] = captions.size();

    if (attribute_pass) {
      const auto noun_sets = corpus::read_noun_sets_tsv(cfg.noun_sets);
      const auto synonym_sets = corpus::read_synonym_sets_tsv(cfg.synonyms);
      const auto lexicon = corpus::read_lexicon_tsv(cfg.lexicon);
      const auto detections = features::read_detections_json(cfg.detections);
      std::map<std::string, std::vector<corpus::RegionAnnotation>> annotations;
      for (const auto& set : detections) {
        auto& regions = annotations[set.image_id];
        for (const auto& region : set.regions) {
          corpus::RegionAnnotation ann;
          ann.category_id = region.category_id;
          for (const auto& a : region.attributes) ann.attribute_ids.push_back(a.id);
          regions.push_back(std::move(ann));
        }
      }

      std::vector<corpus::Caption> augmented;
      std::map<std::string, std::size_t> insertions;
      augmented.reserve(captions.size());
      for (const auto& caption : captions) {
        const auto it = annotations.find(caption.image_id);
        if (it == annotations.end()) {
          augmented.push_back(caption);
          continue;
        }
        corpus::Caption out = corpus::augment_with_attributes(caption, it->second, noun_sets,
                                                              synonym_sets, lexicon, rng);
        for (const auto& token : out.tokens) {
          if (token.inserted) ++insertions[token.text];
        }
        augmented.push_back(std::move(out));
      }
      corpus::write_captions_jsonl(out_path(cfg, "attribute_augmented.jsonl"), augmented);
      summary["attribute"] = {{"captions_out", augmented.size()}, {"insertions", insertions}};
    }

    if (anp_pass) {
      const auto anps = corpus::read_anp_table_tsv(cfg.anps);
      std::vector<corpus::Caption> augmented;
      std::map<std::string, std::size_t> insertions;
      for (const auto& caption : captions) {
        for (const auto sentiment : {corpus::Sentiment::positive, corpus::Sentiment::negative}) {
          corpus::Caption out = corpus::augment_with_anps(caption, anps, sentiment, rng);
          bool any = false;
          for (const auto& token : out.tokens) {
            if (token.inserted) {
              ++insertions[token.text];
              any = true;
            }
          }
          if (any) augmented.push_back(std::move(out));
        }
      }
      corpus::write_captions_jsonl(out_path(cfg, "anp_augmented.jsonl"), augmented);
      summary["anp"] = {{"captions_out", augmented.size()}, {"insertions", insertions}};
    }

    write_text_file(out_path(cfg, "augment_summary.json"), summary.dump(2) + "\n");
    std::cout << "augmented " << captions.size() << " captions into " << cfg.out_dir << "\n";
    return kExitOk;
  });
}

namespace {

struct AlignedCorpus {
  std::vector<corpus::Caption> captions;
  std::vector<features::RegionFeatureSet> sets;
  std::map<std::string, std::size_t> set_index;  // image_id -> sets position
  corpus::Vocabulary vocab;
};

// Loads captions and region features, joins them by image_id, and builds the
// vocabulary; throws listing the image_ids that lack features.
AlignedCorpus load_aligned_corpus(const RunConfig& cfg) {
  require_input(cfg.corpus, "corpus");
  require_input(cfg.detections, "detections");
  require_input(cfg.features_bin, "features_bin");
  require_input(cfg.features_manifest, "features_manifest");

  AlignedCorpus out;
  out.captions = read_corpus(cfg.corpus);
  require(!out.captions.empty(), "corpus is empty: " + cfg.corpus);
  out.sets =
      features::read_region_feature_sets(cfg.detections, cfg.features_bin, cfg.features_manifest);
  for (std::size_t i = 0; i < out.sets.size(); ++i) out.set_index[out.sets[i].image_id] = i;

  std::set<std::string> missing;
  for (const auto& caption : out.captions) {
    if (out.set_index.count(caption.image_id) == 0) missing.insert(caption.image_id);
  }
  require(missing.empty(), "alignment failure; missing feature sets for image_ids: " +
                                join_ids(missing));

  for (const auto& set : out.sets) {
    require(set.feature_dim() == cfg.model.feature_dim,
            "feature dim of " + set.image_id + " disagrees with the model config");
  }

  out.vocab = corpus::Vocabulary::build(out.captions, cfg.min_count);
  return out;
}

}  // namespace

int cmd_train(const RunConfig& cfg) {
  return run_guarded([&]() {
    require_seed(cfg);
    AlignedCorpus aligned = load_aligned_corpus(cfg);

    model::ModelConfig mcfg = cfg.model;
    mcfg.vocab_size = aligned.vocab.size();
    mcfg.validate();

    latent::AttributePrior prior;
    bool has_prior = false;
    if (mcfg.prior == model::PriorKind::attribute) {
      require_input(cfg.synonyms, "synonyms");
      require_input(cfg.lexicon, "lexicon");
      const auto names =
          attribute_names_from_synonyms(corpus::read_synonym_sets_tsv(cfg.synonyms));
      prior = build_attribute_prior(cfg, names);
      has_prior = true;
      const auto unknown = unknown_attribute_ids(aligned.sets, prior);
      if (!unknown.empty()) {
        std::string list;
        for (int id : unknown) list += (list.empty() ? "" : ", ") + std::to_string(id);
        throw std::invalid_argument("detections use attribute ids missing from the prior: " +
                                    list);
      }
    }

    std::vector<model::TrainItem> items;
    items.reserve(aligned.captions.size());
    for (const auto& caption : aligned.captions) {
      const auto& set = aligned.sets[aligned.set_index.at(caption.image_id)];
      model::TrainItem item;
      item.image_id = caption.image_id;
      item.tokens = aligned.vocab.encode(caption.tokens);
      item.features = set.feature_matrix();
      item.prior.attribute_sets = set.attribute_id_sets();
      if (has_prior) item.prior.attribute_prior = &prior;
      item.prior.cluster = latent::cluster_for(caption.sentiment);
      item.prior.sigma2 = cfg.prior_sigma2;
      items.push_back(std::move(item));
    }

    model::TrainConfig tcfg = cfg.train;
    tcfg.seed = cfg.seed;
    tcfg.validate();

    long start_iteration = 0;
    model::TrainResult result;
    if (!cfg.checkpoint.empty()) {
      require_input(cfg.checkpoint, "checkpoint");
      model::Checkpoint resume = model::load_checkpoint(cfg.checkpoint);
      require(resume.vocab_hash == aligned.vocab.hash(),
              "resume checkpoint vocabulary hash disagrees with the corpus");
      require(resume.config.hidden_size == mcfg.hidden_size &&
                  resume.config.z_dim == mcfg.z_dim && resume.config.embed_dim == mcfg.embed_dim &&
                  resume.config.feature_dim == mcfg.feature_dim &&
                  resume.config.attn_dim == mcfg.attn_dim &&
                  resume.config.vocab_size == mcfg.vocab_size &&
                  resume.config.max_len == mcfg.max_len && resume.config.prior == mcfg.prior,
              "resume checkpoint config disagrees with the run config");
      start_iteration = resume.iteration;
      result = model::train(mcfg, tcfg, items, resume.params);
    } else {
      result = model::train_from_scratch(mcfg, tcfg, items);
    }

    if (result.diverged) {
      std::cerr << "warning: training diverged (" << result.divergence_message
                << "); the checkpoint holds the last finite parameters\n";
    }

    model::Checkpoint ck;
    ck.config = mcfg;
    ck.params = result.params;
    ck.vocab_words = aligned.vocab.words();
    ck.vocab_hash = aligned.vocab.hash();
    ck.iteration = start_iteration + result.iterations_run;
    ck.has_attribute_prior = has_prior;
    if (has_prior) ck.attribute_prior = prior;
    const std::string ck_path = out_path(cfg, "model.ckpt");
    model::save_checkpoint(ck_path, ck);
    write_text_file(out_path(cfg, "loss_trace.csv"), model::loss_trace_csv(result.trace));

    const double final_loss = result.trace.empty() ? 0.0 : result.trace.back().total;
    std::cout << "trained " << result.iterations_run << " iterations; final loss " << final_loss
              << "; checkpoint " << ck_path << "\n";
    return kExitOk;
  });
}

int cmd_generate(const RunConfig& cfg) {
  return run_guarded([&]() {
    require_seed(cfg);
    require_input(cfg.checkpoint, "checkpoint");
    require_input(cfg.corpus, "corpus");
    require_input(cfg.detections, "detections");
    require_input(cfg.features_bin, "features_bin");
    require_input(cfg.features_manifest, "features_manifest");
    require(cfg.n >= 1, "n must be >= 1");
    require(cfg.beam >= 1, "beam must be >= 1");

    const model::Checkpoint ck = model::load_checkpoint(cfg.checkpoint);

    const auto captions = read_corpus(cfg.corpus);
    const auto corpus_vocab = corpus::Vocabulary::build(captions, cfg.min_count);
    require(corpus_vocab.hash() == ck.vocab_hash,
            "checkpoint vocabulary hash disagrees with the corpus; re-train or fix paths");
    const auto vocab = corpus::Vocabulary::from_words(ck.vocab_words);

    auto sets =
        features::read_region_feature_sets(cfg.detections, cfg.features_bin, cfg.features_manifest);
    for (const auto& set : sets) {
      require(set.feature_dim() == ck.config.feature_dim,
              "feature dim of " + set.image_id + " disagrees with the checkpoint");
    }
    std::sort(sets.begin(), sets.end(),
              [](const auto& a, const auto& b) { return a.image_id < b.image_id; });

    decode::AttributeWords words;
    if (cfg.constraint != decode::ConstraintMode::none) {
      require_input(cfg.synonyms, "synonyms");
      words = decode::attribute_words_from_synonym_sets(corpus::read_synonym_sets_tsv(cfg.synonyms));
    }
    if (ck.config.prior == model::PriorKind::attribute) {
      require(ck.has_attribute_prior, "checkpoint lacks the attribute prior table");
      const auto unknown = unknown_attribute_ids(sets, ck.attribute_prior);
      if (!unknown.empty()) {
        std::string list;
        for (int id : unknown) list += (list.empty() ? "" : ", ") + std::to_string(id);
        throw std::invalid_argument("detections use attribute ids missing from the prior: " +
                                    list);
      }
    }

    model::GenerateConfig gcfg;
    gcfg.std_dev = cfg.std_dev;
    gcfg.max_len = ck.config.max_len;
    gcfg.mode = cfg.decode_mode;

    std::size_t failures = 0;
    std::size_t non_constraint_failures = 0;
    std::ostringstream lines;
    for (const auto& set : sets) {
      const Mat feats = set.feature_matrix();
      model::PriorContext prior;
      prior.attribute_sets = set.attribute_id_sets();
      if (ck.config.prior == model::PriorKind::attribute) {
        prior.attribute_prior = &ck.attribute_prior;
      }
      prior.cluster = cfg.cluster;
      prior.sigma2 = ck.has_attribute_prior ? ck.attribute_prior.sigma2 : cfg.prior_sigma2;

      Rng rng = Rng::substream(cfg.seed, "generate." + set.image_id);
      const decode::ScorerFactory factory = [&](int, Rng& r) {
        return std::make_unique<model::ModelStepScorer>(ck.params, ck.config, feats, prior, gcfg,
                                                        r);
      };
      const auto items = decode::diverse_decode(factory, set, words, vocab, cfg.constraint, cfg.n,
                                                cfg.beam, ck.config.max_len, rng);
      for (const auto& item : items) {
        nlohmann::json groups = nlohmann::json::array();
        for (const auto& group : item.spec.groups) groups.push_back(group);
        nlohmann::json line{{"image_id", set.image_id},
                            {"mode", decode::to_string(item.spec.mode)},
                            {"constraints", groups},
                            {"satisfied", item.satisfied}};
        if (item.satisfied) {
          line["caption"] = caption_from_ids(item.tokens, vocab);
          line["logprob"] = item.logprob;
        } else {
          line["error"] = item.error;
          ++failures;
          if (!item.constraint_unsat) ++non_constraint_failures;
        }
        if (item.spec.degraded) line["warning"] = item.spec.warning;
        lines << line.dump() << "\n";
      }
    }

    write_text_file(out_path(cfg, "generated.jsonl"), lines.str());
    std::cout << "decoded " << sets.size() << " images x " << cfg.n << " samples; " << failures
              << " failures; output " << out_path(cfg, "generated.jsonl") << "\n";
    if (failures == 0) return kExitOk;
    return non_constraint_failures == 0 ? kExitConstraint : kExitValidation;
  });
}

namespace {

// Decode output lines grouped per image, in file order; failed lines are
// skipped with a note.
metrics::CaptionSets read_candidates_jsonl(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open candidates: " + path);
  metrics::CaptionSets sets;
  std::string line;
  std::size_t line_no = 0;
  std::size_t skipped = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("caption")) {
      ++skipped;
      continue;
    }
    sets[j.at("image_id").get<std::string>()].push_back(
        token_seq_from_text(j.at("caption").get<std::string>()));
  }
  if (skipped > 0) {
    std::cerr << "note: skipped " << skipped << " failed decode lines in " << path << "\n";
  }
  return sets;
}

metrics::CaptionSets references_for(const std::vector<corpus::Caption>& captions,
                                    const metrics::CaptionSets& candidates) {
  metrics::CaptionSets refs;
  for (const auto& caption : captions) {
    if (candidates.count(caption.image_id) == 0) continue;
    refs[caption.image_id].push_back(metrics::to_token_seq(caption.tokens));
  }
  return refs;
}

}  // namespace

int cmd_eval(const RunConfig& cfg) {
  return run_guarded([&]() {
    require_input(cfg.candidates, "candidates");
    require_input(cfg.references, "references");

    metrics::EvalInputs in;
    in.candidates = read_candidates_jsonl(cfg.candidates);
    require(!in.candidates.empty(), "no scorable candidates in " + cfg.candidates);
    in.references = references_for(read_corpus(cfg.references), in.candidates);

    std::set<std::string> missing;
    for (const auto& [image_id, caps] : in.candidates) {
      if (in.references.count(image_id) == 0) missing.insert(image_id);
    }
    require(missing.empty(), "missing references for image_ids: " + join_ids(missing));

    corpus::AnpTable anps;
    corpus::SentimentLexicon lexicon;
    if (!cfg.anps.empty()) {
      require_input(cfg.anps, "anps");
      anps = corpus::read_anp_table_tsv(cfg.anps);
      in.anps = &anps;
    }
    if (!cfg.lexicon.empty()) {
      require_input(cfg.lexicon, "lexicon");
      lexicon = corpus::read_lexicon_tsv(cfg.lexicon);
      in.lexicon = &lexicon;
    }

    const metrics::MetricsReport first = metrics::evaluate_first(in);
    const metrics::MetricsReport oracle = metrics::oracle_top1(in);

    nlohmann::json j{{"first", metrics::report_to_json(first)},
                     {"oracle", metrics::report_to_json(oracle)}};
    write_text_file(out_path(cfg, "eval.json"), j.dump(2) + "\n");
    const std::string table =
        metrics::render_report_table({{"first", first}, {"oracle_top1", oracle}});
    write_text_file(out_path(cfg, "eval.txt"), table);
    std::cout << table;
    return kExitOk;
  });
}

int cmd_report(const RunConfig& cfg, const std::vector<std::string>& run_dirs) {
  return run_guarded([&]() {
    require(!run_dirs.empty(), "report needs at least one run directory");

    corpus::SentimentLexicon lexicon;
    bool have_lexicon = false;
    if (!cfg.lexicon.empty()) {
      require_input(cfg.lexicon, "lexicon");
      lexicon = corpus::read_lexicon_tsv(cfg.lexicon);
      have_lexicon = true;
    }

    std::vector<std::pair<std::string, metrics::MetricsReport>> rows;
    std::ostringstream sentiment_csv;
    sentiment_csv << "run,negative,neutral,positive\n";
    for (const auto& dir : run_dirs) {
      const fs::path eval_path = fs::path(dir) / "eval.json";
      require(fs::exists(eval_path), "missing eval output: " + eval_path.string());
      std::ifstream f(eval_path);
      nlohmann::json j;
      f >> j;
      const std::string name = fs::path(dir).filename().string().empty()
                                   ? dir
                                   : fs::path(dir).filename().string();
      rows.emplace_back(name + " first", metrics::report_from_json(j.at("first")));
      rows.emplace_back(name + " oracle", metrics::report_from_json(j.at("oracle")));

      std::size_t neg = 0, neu = 0, pos = 0;
      const fs::path decode_path = fs::path(dir) / "generated.jsonl";
      if (have_lexicon && fs::exists(decode_path)) {
        std::ifstream d(decode_path);
        std::string line;
        while (std::getline(d, line)) {
          if (line.empty()) continue;
          const nlohmann::json item = nlohmann::json::parse(line);
          if (!item.contains("caption")) continue;
          const auto seq = token_seq_from_text(item.at("caption").get<std::string>());
          switch (metrics::lexicon_classify(seq, lexicon)) {
            case corpus::Sentiment::negative: ++neg; break;
            case corpus::Sentiment::positive: ++pos; break;
            default: ++neu; break;
          }
        }
      }
      sentiment_csv << name << "," << neg << "," << neu << "," << pos << "\n";
    }

    const std::string table = metrics::render_report_table(rows);
    write_text_file(out_path(cfg, "summary.txt"), table);
    write_text_file(out_path(cfg, "sentiment_counts.csv"), sentiment_csv.str());
    std::cout << table;
    return kExitOk;
  });
}

}  // namespace stylecap::cli
