#ifndef STYLECAP_CORPUS_TYPES_HPP_
#define STYLECAP_CORPUS_TYPES_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace stylecap::corpus {

enum class TokenKind { word, punctuation, bos, eos };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::word;
  // Set on adjectives grafted in by augmentation; removing exactly the
  // inserted tokens recovers the original sequence.
  bool inserted = false;

  bool operator==(const Token& o) const { return text == o.text && kind == o.kind; }
};

enum class Sentiment { positive, negative, neutral, unlabeled };

enum class Provenance { original, attribute_augmented, anp_augmented };

struct Caption {
  std::string image_id;
  std::vector<Token> tokens;  // without bos/eos framing
  Sentiment sentiment = Sentiment::unlabeled;
  Provenance provenance = Provenance::original;

  std::string text() const;
};

struct SynonymSet {
  int attribute_id = 0;
  std::string canonical;
  std::set<std::string> synonyms;  // includes the canonical form
};

struct ObjectNounSet {
  int category_id = 0;
  std::set<std::string> nouns;
};

// noun -> sentiment -> adjectives that pair with it.
struct AnpTable {
  std::map<std::string, std::map<Sentiment, std::set<std::string>>> entries;

  bool has(const std::string& noun, Sentiment s) const;
  const std::set<std::string>& adjectives(const std::string& noun, Sentiment s) const;
};

struct SentimentLexicon {
  std::map<std::string, double> scores;  // word -> [0, 1]
  double neg_cutoff = 0.4;
  double pos_cutoff = 0.6;

  bool has(const std::string& word) const { return scores.count(word) > 0; }
  double score(const std::string& word) const;
  // positive above pos_cutoff, negative below neg_cutoff, neutral between.
  Sentiment polarity(const std::string& word) const;
};

std::string to_string(Sentiment s);
Sentiment sentiment_from_string(const std::string& s);
std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

}  // namespace stylecap::corpus

#endif  // STYLECAP_CORPUS_TYPES_HPP_
