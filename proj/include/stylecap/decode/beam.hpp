#ifndef STYLECAP_DECODE_BEAM_HPP_
#define STYLECAP_DECODE_BEAM_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/decode/constraints.hpp"

namespace stylecap::decode {

// Next-token log-probabilities given the tokens produced so far (ids, no
// leading bos). Must be a pure function of the prefix within one decode.
class StepScorer {
 public:
  virtual ~StepScorer() = default;
  virtual Vec log_probs(const std::vector<int>& prefix) = 0;
};

struct Hypothesis {
  std::vector<int> tokens;  // ends with eos once finished
  double logprob = 0.0;
  std::uint32_t state = 0;
  bool finished = false;
};

// True when a ranks before b: higher log-probability, ties broken by
// lexicographically smaller token-id sequence.
bool hypothesis_before(const Hypothesis& a, const Hypothesis& b);

struct DecodeResult {
  Hypothesis best;
  // Finished accepting hypotheses, best first.
  std::vector<Hypothesis> finished;
};

// Beam search holding beam_size hypotheses per automaton state. Returns the
// best finished hypothesis in an accepting state; throws
// ConstraintUnsatisfiableError when none finishes within max_len steps.
DecodeResult constrained_beam_search(StepScorer& scorer, const ConstraintAutomaton& automaton,
                                     int beam_size, int max_len, int eos_id);

struct DiverseItem {
  std::vector<int> tokens;
  double logprob = 0.0;
  ConstraintSpec spec;
  bool satisfied = false;
  std::string error;            // set when this item's decode failed
  bool constraint_unsat = false;  // the failure was a ConstraintUnsatisfiableError
};

using ScorerFactory = std::function<std::unique_ptr<StepScorer>(int sample_index, Rng& rng)>;

// n decodes of one image, each with a freshly sampled constraint and its own
// scorer (whose latent draws come from rng). Per-item failures are recorded,
// not thrown.
std::vector<DiverseItem> diverse_decode(const ScorerFactory& make_scorer,
                                        const features::RegionFeatureSet& detections,
                                        const AttributeWords& words,
                                        const corpus::Vocabulary& vocab, ConstraintMode mode, int n,
                                        int beam_size, int max_len, Rng& rng);

}  // namespace stylecap::decode

#endif  // STYLECAP_DECODE_BEAM_HPP_
