#include "stylecap/decode/beam.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stylecap::decode {

bool hypothesis_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.logprob != b.logprob) return a.logprob > b.logprob;
  return a.tokens < b.tokens;
}

DecodeResult constrained_beam_search(StepScorer& scorer, const ConstraintAutomaton& automaton,
                                     int beam_size, int max_len, int eos_id) {
  if (beam_size < 1) throw std::invalid_argument("constrained_beam_search: beam_size < 1");
  if (max_len < 1) throw std::invalid_argument("constrained_beam_search: max_len < 1");

  std::map<std::uint32_t, std::vector<Hypothesis>> beams;
  beams[0].push_back(Hypothesis{});
  std::vector<Hypothesis> finished;

  for (int t = 0; t < max_len && !beams.empty(); ++t) {
    std::map<std::uint32_t, std::vector<Hypothesis>> next;
    for (const auto& [state, hyps] : beams) {
      for (const auto& h : hyps) {
        const Vec lp = scorer.log_probs(h.tokens);
        for (Eigen::Index v = 0; v < lp.size(); ++v) {
          Hypothesis child;
          child.tokens = h.tokens;
          child.tokens.push_back(static_cast<int>(v));
          child.logprob = h.logprob + lp[v];
          child.state = automaton.advance(state, static_cast<int>(v));
          if (static_cast<int>(v) == eos_id) {
            child.finished = true;
            if (automaton.accepting(child.state)) finished.push_back(std::move(child));
            continue;
          }
          next[child.state].push_back(std::move(child));
        }
      }
    }
    for (auto& [state, hyps] : next) {
      std::sort(hyps.begin(), hyps.end(), hypothesis_before);
      if (static_cast<int>(hyps.size()) > beam_size) {
        hyps.resize(static_cast<std::size_t>(beam_size));
      }
    }
    beams = std::move(next);
  }

  if (finished.empty()) {
    std::string msg = "no hypothesis finished in an accepting state within " +
                      std::to_string(max_len) + " steps";
    const auto dead = automaton.unreachable_groups();
    if (!dead.empty()) {
      msg += " (" + std::to_string(dead.size()) + " constraint group(s) have no in-vocabulary word)";
    }
    throw ConstraintUnsatisfiableError(msg);
  }
  std::sort(finished.begin(), finished.end(), hypothesis_before);
  DecodeResult result;
  result.best = finished.front();
  result.finished = std::move(finished);
  return result;
}

std::vector<DiverseItem> diverse_decode(const ScorerFactory& make_scorer,
                                        const features::RegionFeatureSet& detections,
                                        const AttributeWords& words,
                                        const corpus::Vocabulary& vocab, ConstraintMode mode, int n,
                                        int beam_size, int max_len, Rng& rng) {
  if (n < 1) throw std::invalid_argument("diverse_decode: n < 1");
  std::vector<DiverseItem> items;
  items.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    DiverseItem item;
    item.spec = pick_constraints(detections, mode, words, rng);
    std::unique_ptr<StepScorer> scorer = make_scorer(i, rng);
    try {
      const ConstraintAutomaton automaton(item.spec, vocab);
      DecodeResult result = constrained_beam_search(*scorer, automaton, beam_size, max_len,
                                                    corpus::Vocabulary::kEos);
      item.tokens = result.best.tokens;
      item.logprob = result.best.logprob;
      item.satisfied = true;
    } catch (const ConstraintUnsatisfiableError& e) {
      item.satisfied = false;
      item.error = e.what();
      item.constraint_unsat = true;
    }
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace stylecap::decode
