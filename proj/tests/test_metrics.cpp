#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylecap/corpus/tokenize.hpp"
#include "stylecap/metrics/ngram.hpp"
#include "stylecap/metrics/report.hpp"
#include "stylecap/metrics/scores.hpp"
#include "stylecap/metrics/senti.hpp"
#include "stylecap/rng.hpp"

using namespace stylecap;
using namespace stylecap::metrics;

namespace {

TokenSeq seq(const std::string& text) {
  TokenSeq out;
  std::string word;
  for (char ch : text + " ") {
    if (ch == ' ') {
      if (!word.empty()) out.push_back(word);
      word.clear();
    } else {
      word += ch;
    }
  }
  return out;
}

// Reference scorers below are written against joined-string keys and plain
// loops so they share no code with the library implementations.

std::unordered_map<std::string, long> count_grams(const TokenSeq& tokens, int n) {
  std::unordered_map<std::string, long> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) key += tokens[i + static_cast<std::size_t>(j)] + "\x1f";
    ++counts[key];
  }
  return counts;
}

struct RefBleuStats {
  std::vector<long> clipped, total;
  long cand_len = 0, ref_len = 0;
};

RefBleuStats ref_bleu_stats(const TokenSeq& cand, const std::vector<TokenSeq>& refs, int max_n) {
  RefBleuStats s;
  s.cand_len = static_cast<long>(cand.size());
  s.ref_len = static_cast<long>(refs[0].size());
  for (const auto& r : refs) {
    const long len = static_cast<long>(r.size());
    const long d = std::labs(len - s.cand_len), bd = std::labs(s.ref_len - s.cand_len);
    if (d < bd || (d == bd && len < s.ref_len)) s.ref_len = len;
  }
  for (int n = 1; n <= max_n; ++n) {
    std::unordered_map<std::string, long> cap;
    for (const auto& r : refs) {
      for (const auto& [g, c] : count_grams(r, n)) {
        if (c > cap[g]) cap[g] = c;
      }
    }
    long clipped = 0, total = 0;
    for (const auto& [g, c] : count_grams(cand, n)) {
      total += c;
      auto it = cap.find(g);
      if (it != cap.end()) clipped += std::min(c, it->second);
    }
    s.clipped.push_back(clipped);
    s.total.push_back(total);
  }
  return s;
}

std::vector<double> ref_bleu_finish(const RefBleuStats& s) {
  std::vector<double> out(s.clipped.size(), 0.0);
  if (s.cand_len == 0) return out;
  const double bp =
      s.cand_len >= s.ref_len ? 1.0 : std::exp(1.0 - double(s.ref_len) / double(s.cand_len));
  double acc = 0.0;
  for (std::size_t n = 0; n < s.clipped.size(); ++n) {
    double p = 1e-9;
    if (s.total[n] > 0 && s.clipped[n] > 0) p = double(s.clipped[n]) / double(s.total[n]);
    acc += std::log(p);
    out[n] = bp * std::exp(acc / double(n + 1));
  }
  return out;
}

std::vector<double> ref_bleu(const TokenSeq& cand, const std::vector<TokenSeq>& refs, int max_n) {
  return ref_bleu_finish(ref_bleu_stats(cand, refs, max_n));
}

long ref_lcs(const TokenSeq& a, const TokenSeq& b, std::size_t i, std::size_t j,
             std::map<std::pair<std::size_t, std::size_t>, long>& memo) {
  if (i == a.size() || j == b.size()) return 0;
  const auto key = std::make_pair(i, j);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long best;
  if (a[i] == b[j]) {
    best = 1 + ref_lcs(a, b, i + 1, j + 1, memo);
  } else {
    best = std::max(ref_lcs(a, b, i + 1, j, memo), ref_lcs(a, b, i, j + 1, memo));
  }
  memo[key] = best;
  return best;
}

double ref_rouge(const TokenSeq& cand, const std::vector<TokenSeq>& refs, double beta) {
  if (cand.empty()) return 0.0;
  double best = 0.0;
  for (const auto& r : refs) {
    if (r.empty()) continue;
    std::map<std::pair<std::size_t, std::size_t>, long> memo;
    const double lcs = static_cast<double>(ref_lcs(cand, r, 0, 0, memo));
    if (lcs == 0.0) continue;
    const double p = lcs / double(cand.size()), rc = lcs / double(r.size());
    best = std::max(best, (1.0 + beta * beta) * p * rc / (rc + beta * beta * p));
  }
  return best;
}

double ref_cider(const CaptionSets& references, const std::string& image_id, const TokenSeq& cand,
                 int max_n) {
  // Document frequency: one count per image containing the n-gram.
  std::unordered_map<std::string, long> df;
  for (const auto& [id, refs] : references) {
    std::set<std::string> seen;
    for (const auto& r : refs) {
      for (int n = 1; n <= max_n; ++n) {
        for (const auto& [g, c] : count_grams(r, n)) seen.insert(g);
      }
    }
    for (const auto& g : seen) ++df[g];
  }
  const double log_m = std::log(double(references.size()));
  auto weigh = [&](const TokenSeq& t, int n) {
    std::unordered_map<std::string, double> w;
    for (const auto& [g, c] : count_grams(t, n)) {
      auto it = df.find(g);
      const double f = it == df.end() ? 1.0 : double(it->second);
      w[g] = double(c) * (log_m - std::log(std::max(1.0, f)));
    }
    return w;
  };
  auto norm = [](const std::unordered_map<std::string, double>& w) {
    double s = 0.0;
    for (const auto& [g, v] : w) s += v * v;
    return std::sqrt(s);
  };

  const auto& refs = references.at(image_id);
  double order_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cw = weigh(cand, n);
    const double cn = norm(cw);
    double sim = 0.0;
    for (const auto& r : refs) {
      const auto rw = weigh(r, n);
      const double rn = norm(rw);
      if (cn <= 0.0 || rn <= 0.0) continue;
      double dot = 0.0;
      for (const auto& [g, v] : cw) {
        auto it = rw.find(g);
        if (it != rw.end()) dot += v * it->second;
      }
      sim += dot / (cn * rn);
    }
    order_sum += sim / double(refs.size());
  }
  return 10.0 * order_sum / double(max_n);
}

struct RandomInstance {
  TokenSeq candidate;
  std::vector<TokenSeq> references;
};

RandomInstance random_instance(Rng& rng) {
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
  auto sentence = [&](std::size_t min_len) {
    TokenSeq s;
    const std::size_t len = min_len + rng.uniform_index(7);
    for (std::size_t i = 0; i < len; ++i) s.push_back(vocab[rng.uniform_index(vocab.size())]);
    return s;
  };
  RandomInstance inst;
  inst.candidate = sentence(1);
  const std::size_t refs = 1 + rng.uniform_index(3);
  for (std::size_t i = 0; i < refs; ++i) inst.references.push_back(sentence(2));
  return inst;
}

}  // namespace

TEST_CASE("to_token_seq drops framing tokens") {
  corpus::Caption c;
  c.tokens = corpus::tokenize("a lovely cat");
  corpus::Token bos;
  bos.text = "<bos>";
  bos.kind = corpus::TokenKind::bos;
  c.tokens.insert(c.tokens.begin(), bos);
  CHECK(to_token_seq(c) == TokenSeq{"a", "lovely", "cat"});
}

TEST_CASE("ngram_counts window and multiplicity") {
  const auto counts = ngram_counts(seq("a b a b"), 2);
  REQUIRE(counts.size() == 2);
  CHECK(counts.at({"a", "b"}) == 2);
  CHECK(counts.at({"b", "a"}) == 1);
  CHECK(ngram_counts(seq("a b"), 3).empty());
}

TEST_CASE("bleu matches the reference implementation on random instances") {
  Rng rng(90210);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng);
    const auto got = bleu(inst.candidate, inst.references, 4);
    const auto want = ref_bleu(inst.candidate, inst.references, 4);
    REQUIRE(got.size() == 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(std::abs(got[static_cast<std::size_t>(n)] - want[static_cast<std::size_t>(n)]) < 1e-9);
    }
  }
}

TEST_CASE("corpus_bleu pools sentence statistics before finishing") {
  Rng rng(31);
  std::vector<TokenSeq> cands;
  std::vector<std::vector<TokenSeq>> refs;
  RefBleuStats acc;
  acc.clipped.assign(4, 0);
  acc.total.assign(4, 0);
  for (int i = 0; i < 8; ++i) {
    const auto inst = random_instance(rng);
    cands.push_back(inst.candidate);
    refs.push_back(inst.references);
    const auto s = ref_bleu_stats(inst.candidate, inst.references, 4);
    for (int n = 0; n < 4; ++n) {
      acc.clipped[static_cast<std::size_t>(n)] += s.clipped[static_cast<std::size_t>(n)];
      acc.total[static_cast<std::size_t>(n)] += s.total[static_cast<std::size_t>(n)];
    }
    acc.cand_len += s.cand_len;
    acc.ref_len += s.ref_len;
  }
  const auto got = corpus_bleu(cands, refs, 4);
  const auto want = ref_bleu_finish(acc);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(got[static_cast<std::size_t>(n)] - want[static_cast<std::size_t>(n)]) < 1e-9);
  }
}

TEST_CASE("bleu of a verbatim reference is one at every order") {
  const auto cand = seq("a lovely cat sits on the mat");
  const std::vector<TokenSeq> refs = {seq("an ugly dog"), cand};
  const auto scores = bleu(cand, refs, 4);
  for (double s : scores) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bleu edge cases") {
  CHECK(bleu({}, {seq("a b")}, 4) == std::vector<double>(4, 0.0));
  // One-word candidate has no higher-order n-grams; the floor kicks in.
  const auto one = bleu(seq("a"), {seq("a")}, 2);
  CHECK(one[0] == doctest::Approx(1.0));
  CHECK(one[1] == doctest::Approx(std::sqrt(1e-9)).epsilon(1e-6));
  CHECK_THROWS_AS(bleu(seq("a"), {}, 4), std::invalid_argument);
}

TEST_CASE("rouge_l matches the reference implementation on random instances") {
  Rng rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng);
    CHECK(std::abs(rouge_l(inst.candidate, inst.references) -
                   ref_rouge(inst.candidate, inst.references, 1.2)) < 1e-9);
  }
}

TEST_CASE("rouge_l identity and hand value") {
  const auto cand = seq("a b c d");
  CHECK(rouge_l(cand, {cand}) == doctest::Approx(1.0).epsilon(1e-12));
  // lcs("a b c", "a c") = 2; P = 2/3, R = 1; beta = 1.2.
  const double p = 2.0 / 3.0, r = 1.0, b2 = 1.44;
  CHECK(rouge_l(seq("a b c"), {seq("a c")}) ==
        doctest::Approx((1.0 + b2) * p * r / (r + b2 * p)).epsilon(1e-12));
  CHECK(rouge_l({}, {seq("a")}) == 0.0);
}

TEST_CASE("cider matches the reference implementation on random instances") {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    CaptionSets refs;
    const std::size_t images = 2 + rng.uniform_index(3);
    for (std::size_t i = 0; i < images; ++i) {
      const std::string id = "img" + std::to_string(i);
      const std::size_t count = 1 + rng.uniform_index(2);
      for (std::size_t j = 0; j < count; ++j) refs[id].push_back(random_instance(rng).candidate);
    }
    // Drop empty reference captions; they carry no mass anyway.
    for (auto& [id, list] : refs) {
      for (auto& r : list) {
        if (r.empty()) r = seq("a");
      }
    }
    const CiderScorer scorer(refs, 4);
    for (const auto& [id, list] : refs) {
      const auto cand = random_instance(rng).candidate;
      CHECK(std::abs(scorer.score(id, cand) - ref_cider(refs, id, cand, 4)) < 1e-6);
    }
  }
}

TEST_CASE("cider of verbatim references with disjoint images is ten") {
  CaptionSets refs;
  refs["x"] = {seq("a lovely cat sits quietly")};
  refs["y"] = {seq("one broken table stands there")};
  const CiderScorer scorer(refs);
  CHECK(scorer.score("x", refs["x"][0]) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(scorer.score("y", refs["y"][0]) == doctest::Approx(10.0).epsilon(1e-9));

  std::map<std::string, TokenSeq> cands = {{"x", refs["x"][0]}, {"y", refs["y"][0]}};
  CHECK(scorer.corpus_score(cands) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_AS(scorer.score("z", seq("a")), std::invalid_argument);
}

TEST_CASE("div_n hand values and duplicate sensitivity") {
  const std::vector<TokenSeq> caps = {seq("a b a"), seq("a b")};
  CHECK(div_n(caps, 1) == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
  CHECK(div_n(caps, 2) == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
  CHECK(div_n(caps, 1, true) == doctest::Approx((2.0 / 3.0 + 1.0) / 2.0).epsilon(1e-12));

  const std::vector<TokenSeq> dup = {seq("a b c"), seq("a b c")};
  const std::vector<TokenSeq> distinct = {seq("a b c"), seq("d e f")};
  CHECK(div_n(dup, 1) < div_n(distinct, 1));
  CHECK(div_n(dup, 2) < div_n(distinct, 2));
  CHECK_THROWS_AS(div_n({}, 1), std::invalid_argument);
}

TEST_CASE("sen_percent respects adjacency") {
  corpus::AnpTable anps;
  anps.entries["cat"][corpus::Sentiment::positive] = {"lovely"};
  anps.entries["dog"][corpus::Sentiment::negative] = {"dirty"};

  const std::vector<TokenSeq> caps = {
      seq("a lovely cat"),        // adjacent pair
      seq("lovely the cat"),      // both words, not adjacent
      seq("a cat"),               // noun only
      seq("a lovely dirty dog"),  // negative pair, not positive
  };
  CHECK(sen_percent(caps, anps, corpus::Sentiment::positive) == doctest::Approx(25.0));
  CHECK(sen_percent(caps, anps, corpus::Sentiment::positive, false) == doctest::Approx(50.0));
  CHECK(sen_percent(caps, anps, corpus::Sentiment::negative) == doctest::Approx(25.0));
  CHECK(sen_percent({}, anps, corpus::Sentiment::positive) == 0.0);
}

TEST_CASE("sentiment_pr macro-averages per-image overlap") {
  corpus::SentimentLexicon lexicon;
  lexicon.scores = {{"lovely", 0.9}, {"ugly", 0.1}, {"nice", 0.8}, {"table", 0.5}};

  CaptionSets cands, refs;
  cands["1"] = {seq("a lovely cat")};
  refs["1"] = {seq("an ugly cat"), seq("a lovely dog")};
  cands["2"] = {seq("a table")};
  refs["2"] = {seq("a nice table")};

  const auto [sp, sr] = sentiment_pr(cands, refs, lexicon);
  CHECK(sp == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sr == doctest::Approx(0.25).epsilon(1e-12));

  cands["3"] = {seq("a dog")};
  CHECK_THROWS_AS(sentiment_pr(cands, refs, lexicon), std::invalid_argument);
}

TEST_CASE("lexicon_classify takes the majority polarity") {
  corpus::SentimentLexicon lexicon;
  lexicon.scores = {{"lovely", 0.9}, {"nice", 0.8}, {"ugly", 0.1}, {"bad", 0.2}, {"sad", 0.15}};
  CHECK(lexicon_classify(seq("lovely nice ugly bad sad"), lexicon) ==
        corpus::Sentiment::negative);
  CHECK(lexicon_classify(seq("lovely nice ugly"), lexicon) == corpus::Sentiment::positive);
  CHECK(lexicon_classify(seq("lovely ugly"), lexicon) == corpus::Sentiment::neutral);
  CHECK(lexicon_classify(seq("a plain caption"), lexicon) == corpus::Sentiment::neutral);
}

namespace {

EvalInputs make_eval_inputs() {
  EvalInputs in;
  in.candidates["1"] = {seq("a cat sits on a mat"), seq("a lovely cat sits on the mat")};
  in.candidates["2"] = {seq("one dog runs far away"), seq("a dog")};
  in.references["1"] = {seq("a lovely cat sits on the mat"), seq("the cat rests on a mat")};
  in.references["2"] = {seq("one dog runs far away"), seq("the dog sprints off")};
  return in;
}

}  // namespace

TEST_CASE("oracle selection never scores below the first candidate") {
  auto in = make_eval_inputs();
  const auto first = evaluate_first(in);
  const auto oracle = oracle_top1(in);
  CHECK(oracle.cider >= first.cider - 1e-12);
  CHECK(first.n == 2);
  CHECK(oracle.n == 2);
  CHECK_FALSE(first.oracle);
  CHECK(oracle.oracle);
  // Diversity covers the full candidate sets, so the two reports agree there.
  CHECK(first.div1 == doctest::Approx(oracle.div1));
  CHECK(first.div2 == doctest::Approx(oracle.div2));

  // Image 1's second candidate is a verbatim reference; the oracle finds it.
  const CiderScorer scorer(in.references);
  CHECK(oracle.cider >= scorer.score("1", in.candidates["1"][1]) / 2.0 - 1e-9);
}

TEST_CASE("single-candidate inputs make oracle and first coincide") {
  auto in = make_eval_inputs();
  for (auto& [id, c] : in.candidates) c.resize(1);
  const auto first = evaluate_first(in);
  const auto oracle = oracle_top1(in);
  CHECK(first.n == 1);
  for (int n = 0; n < 4; ++n) {
    CHECK(first.bleu[static_cast<std::size_t>(n)] ==
          doctest::Approx(oracle.bleu[static_cast<std::size_t>(n)]));
  }
  CHECK(first.rouge == doctest::Approx(oracle.rouge));
  CHECK(first.cider == doctest::Approx(oracle.cider));
}

TEST_CASE("eval reports carry sentiment columns when tables are supplied") {
  auto in = make_eval_inputs();
  corpus::AnpTable anps;
  anps.entries["cat"][corpus::Sentiment::positive] = {"lovely"};
  corpus::SentimentLexicon lexicon;
  lexicon.scores = {{"lovely", 0.9}};
  in.anps = &anps;
  in.lexicon = &lexicon;

  const auto first = evaluate_first(in);
  // First candidates contain no ANP pair; image 1's references do contain
  // "lovely", image 2's references none.
  CHECK(first.sen_pct == doctest::Approx(0.0));
  CHECK(first.sp == doctest::Approx(0.0));
  CHECK(first.sr == doctest::Approx(0.0));

  const auto oracle = oracle_top1(in);
  CHECK(oracle.sen_pct == doctest::Approx(50.0));
  CHECK(oracle.sp == doctest::Approx(0.5));
  CHECK(oracle.sr == doctest::Approx(0.5));
}

TEST_CASE("metrics report json round-trips and the table puts n/a in the M column") {
  MetricsReport r;
  r.bleu = {0.1, 0.2, 0.3, 0.4};
  r.rouge = 0.5;
  r.cider = 1.25;
  r.div1 = 0.6;
  r.div2 = 0.7;
  r.sen_pct = 12.5;
  r.sp = 0.25;
  r.sr = 0.75;
  r.n = 10;
  r.oracle = true;

  const auto back = report_from_json(report_to_json(r));
  CHECK(back.bleu == r.bleu);
  CHECK(back.rouge == r.rouge);
  CHECK(back.cider == r.cider);
  CHECK(back.div1 == r.div1);
  CHECK(back.div2 == r.div2);
  CHECK(back.sen_pct == r.sen_pct);
  CHECK(back.sp == r.sp);
  CHECK(back.sr == r.sr);
  CHECK(back.n == r.n);
  CHECK(back.oracle == r.oracle);

  const std::string table = render_report_table({{"run-a first", r}, {"run-a oracle", r}});
  CHECK(table.find("n/a") != std::string::npos);
  CHECK(table.find("run-a first") != std::string::npos);
  CHECK(table.find("run-a oracle") != std::string::npos);
  CHECK(table.find("Div-1") != std::string::npos);
}
