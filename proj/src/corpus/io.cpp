#include "stylecap/corpus/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stylecap/corpus/tokenize.hpp"

namespace stylecap::corpus {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

std::vector<Caption> read_captions_jsonl(
    const std::string& path,
    const std::function<void(std::size_t, const std::string&)>& on_error) {
  auto in = open_in(path);
  std::vector<Caption> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      Caption c;
      c.image_id = j.at("image_id").get<std::string>();
      c.tokens = tokenize(j.at("caption").get<std::string>());
      c.sentiment = sentiment_from_string(j.at("sentiment").get<std::string>());
      c.provenance = provenance_from_string(j.at("provenance").get<std::string>());
      out.push_back(std::move(c));
    } catch (const std::exception& e) {
      if (on_error) {
        on_error(line_no, e.what());
      } else {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return out;
}

void write_captions_jsonl(const std::string& path, const std::vector<Caption>& captions) {
  auto out = open_out(path);
  for (const auto& c : captions) {
    json j;
    j["image_id"] = c.image_id;
    j["caption"] = c.text();
    j["sentiment"] = to_string(c.sentiment);
    j["provenance"] = to_string(c.provenance);
    out << j.dump() << "\n";
  }
}

SentimentLexicon read_lexicon_tsv(const std::string& path) {
  auto in = open_in(path);
  SentimentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != 2) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected word TAB score");
    }
    const double score = std::stod(parts[1]);
    if (score < 0.0 || score > 1.0) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": score outside [0, 1]");
    }
    lex.scores[parts[0]] = score;
  }
  return lex;
}

void write_lexicon_tsv(const std::string& path, const SentimentLexicon& lexicon) {
  auto out = open_out(path);
  for (const auto& [word, score] : lexicon.scores) out << word << "\t" << score << "\n";
}

std::vector<ObjectNounSet> read_noun_sets_tsv(const std::string& path) {
  auto in = open_in(path);
  std::vector<ObjectNounSet> sets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != 2) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected category_id TAB nouns");
    }
    ObjectNounSet s;
    s.category_id = std::stoi(parts[0]);
    for (const auto& noun : split(parts[1], ',')) {
      if (!noun.empty()) s.nouns.insert(noun);
    }
    if (s.nouns.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty noun set");
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

void write_noun_sets_tsv(const std::string& path, const std::vector<ObjectNounSet>& sets) {
  auto out = open_out(path);
  for (const auto& s : sets) {
    out << s.category_id << "\t";
    bool first = true;
    for (const auto& n : s.nouns) {
      if (!first) out << ",";
      out << n;
      first = false;
    }
    out << "\n";
  }
}

std::vector<SynonymSet> read_synonym_sets_tsv(const std::string& path) {
  auto in = open_in(path);
  std::vector<SynonymSet> sets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != 3) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected attribute_id TAB canonical TAB synonyms");
    }
    SynonymSet s;
    s.attribute_id = std::stoi(parts[0]);
    s.canonical = parts[1];
    for (const auto& w : split(parts[2], ',')) {
      if (!w.empty()) s.synonyms.insert(w);
    }
    s.synonyms.insert(s.canonical);
    sets.push_back(std::move(s));
  }
  return sets;
}

void write_synonym_sets_tsv(const std::string& path, const std::vector<SynonymSet>& sets) {
  auto out = open_out(path);
  for (const auto& s : sets) {
    out << s.attribute_id << "\t" << s.canonical << "\t";
    bool first = true;
    for (const auto& w : s.synonyms) {
      if (!first) out << ",";
      out << w;
      first = false;
    }
    out << "\n";
  }
}

AnpTable read_anp_table_tsv(const std::string& path) {
  auto in = open_in(path);
  AnpTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != 3) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected noun TAB sentiment TAB adjectives");
    }
    const Sentiment s = sentiment_from_string(parts[1]);
    auto& set = table.entries[parts[0]][s];
    for (const auto& w : split(parts[2], ',')) {
      if (!w.empty()) set.insert(w);
    }
    if (set.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty adjective set");
    }
  }
  return table;
}

void write_anp_table_tsv(const std::string& path, const AnpTable& table) {
  auto out = open_out(path);
  for (const auto& [noun, by_sentiment] : table.entries) {
    for (const auto& [sentiment, adjectives] : by_sentiment) {
      out << noun << "\t" << to_string(sentiment) << "\t";
      bool first = true;
      for (const auto& a : adjectives) {
        if (!first) out << ",";
        out << a;
        first = false;
      }
      out << "\n";
    }
  }
}

std::map<std::string, Vec> read_glove_text(const std::string& path) {
  auto in = open_in(path);
  std::map<std::string, Vec> vectors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    std::vector<double> values;
    double v;
    while (ss >> v) values.push_back(v);
    if (word.empty() || values.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed vector line");
    }
    vectors[word] = Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  return vectors;
}

}  // namespace stylecap::corpus
