#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "stylecap/cli/commands.hpp"
#include "stylecap/cli/config.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Records the flag as a config assignment so file entries and flags share one
// code path; flags land after the file and therefore win.
void map_flag(CLI::App* cmd, const std::string& flag, const std::string& key,
              const std::string& help, Overrides* overrides) {
  cmd->add_option_function<std::string>(
      flag, [key, overrides](const std::string& value) { overrides->emplace_back(key, value); },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylized image captioning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string profile;
  Overrides overrides;
  app.add_option("--config", config_path, "key = value run configuration file");
  app.add_option("--profile", profile, "configuration profile: desk or paper");
  map_flag(&app, "--seed", "seed", "root seed; all stage rngs derive from it", &overrides);
  map_flag(&app, "--out", "out_dir", "output directory", &overrides);

  CLI::App* synth = app.add_subcommand("features-synth", "write a synthetic detection corpus");
  map_flag(synth, "--templates", "synth_templates", "number of scene templates", &overrides);
  map_flag(synth, "--images-per-template", "synth_images_per_template", "images per template",
           &overrides);
  map_flag(synth, "--captions", "synth_captions", "caption variants per image", &overrides);
  map_flag(synth, "--polarity", "synth_polarity", "emit positive/negative caption pairs",
           &overrides);

  CLI::App* augment = app.add_subcommand("augment", "insert style adjectives into captions");

  CLI::App* train = app.add_subcommand("train", "train the captioner");
  map_flag(train, "--iterations", "iterations", "sgd iterations", &overrides);
  map_flag(train, "--resume", "checkpoint", "checkpoint to resume from", &overrides);
  map_flag(train, "--prior", "prior", "latent prior kind: attribute or sentiment", &overrides);
  map_flag(train, "--prior-init", "prior_init", "attribute prior: sentiwordnet or sentiglove",
           &overrides);

  CLI::App* generate = app.add_subcommand("generate", "decode captions from a checkpoint");
  map_flag(generate, "--checkpoint", "checkpoint", "trained model file", &overrides);
  map_flag(generate, "--n", "n", "captions per image", &overrides);
  map_flag(generate, "--std", "std", "latent standard deviation when sampling", &overrides);
  map_flag(generate, "--mode", "constraint",
           "constraint mode: none, weak, individual, multi-object", &overrides);
  map_flag(generate, "--decode", "decode_mode", "token selection: greedy or sample", &overrides);
  map_flag(generate, "--beam", "beam", "beam width per automaton state", &overrides);
  map_flag(generate, "--cluster", "cluster",
           "sentiment cluster for the sentiment prior: negative, neutral, positive", &overrides);

  CLI::App* eval = app.add_subcommand("eval", "score candidate captions against references");
  map_flag(eval, "--candidates", "candidates", "decode output jsonl", &overrides);
  map_flag(eval, "--references", "references", "reference captions jsonl", &overrides);

  CLI::App* report = app.add_subcommand("report", "consolidate eval outputs of several runs");
  std::vector<std::string> run_dirs;
  report->add_option("dirs", run_dirs, "run directories holding eval.json")->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return stylecap::cli::kExitValidation;
  }

  stylecap::cli::RunConfig cfg;
  try {
    if (!profile.empty()) {
      Overrides ordered{{"profile", profile}};
      ordered.insert(ordered.end(), overrides.begin(), overrides.end());
      overrides = std::move(ordered);
    }
    cfg = stylecap::cli::load_run_config(config_path, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return stylecap::cli::kExitValidation;
  }

  if (synth->parsed()) return stylecap::cli::cmd_features_synth(cfg);
  if (augment->parsed()) return stylecap::cli::cmd_augment(cfg);
  if (train->parsed()) return stylecap::cli::cmd_train(cfg);
  if (generate->parsed()) return stylecap::cli::cmd_generate(cfg);
  if (eval->parsed()) return stylecap::cli::cmd_eval(cfg);
  if (report->parsed()) return stylecap::cli::cmd_report(cfg, run_dirs);
  std::cerr << "error: no subcommand\n";
  return stylecap::cli::kExitValidation;
}
