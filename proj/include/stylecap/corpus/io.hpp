#ifndef STYLECAP_CORPUS_IO_HPP_
#define STYLECAP_CORPUS_IO_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stylecap/common.hpp"
#include "stylecap/corpus/types.hpp"

namespace stylecap::corpus {

// Captions travel as JSON Lines:
//   {"image_id": str, "caption": str, "sentiment": "pos|neg|neu|unlabeled",
//    "provenance": str}
// Reading reports malformed lines through on_error (line number + message)
// and keeps going; writing emits one newline-terminated object per caption.
std::vector<Caption> read_captions_jsonl(
    const std::string& path,
    const std::function<void(std::size_t line_no, const std::string& message)>& on_error = {});
void write_captions_jsonl(const std::string& path, const std::vector<Caption>& captions);

// Tab-separated lexicon data, one entry per line, UTF-8, newline-terminated.
//   lexicon:   word TAB score
//   noun sets: category_id TAB comma-joined nouns
//   synonyms:  attribute_id TAB canonical TAB comma-joined synonyms
//   ANP table: noun TAB sentiment TAB comma-joined adjectives
SentimentLexicon read_lexicon_tsv(const std::string& path);
void write_lexicon_tsv(const std::string& path, const SentimentLexicon& lexicon);
std::vector<ObjectNounSet> read_noun_sets_tsv(const std::string& path);
void write_noun_sets_tsv(const std::string& path, const std::vector<ObjectNounSet>& sets);
std::vector<SynonymSet> read_synonym_sets_tsv(const std::string& path);
void write_synonym_sets_tsv(const std::string& path, const std::vector<SynonymSet>& sets);
AnpTable read_anp_table_tsv(const std::string& path);
void write_anp_table_tsv(const std::string& path, const AnpTable& table);

// GloVe-style embeddings: "word f1 f2 ... fd" per line.
std::map<std::string, Vec> read_glove_text(const std::string& path);

}  // namespace stylecap::corpus

#endif  // STYLECAP_CORPUS_IO_HPP_
