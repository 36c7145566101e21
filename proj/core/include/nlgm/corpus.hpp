#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlgm/dialogue_acts.hpp"

namespace nlgm {

// One hypothesis with at least one reference, the unit of scoring.
struct EvalInstance {
  std::string id;
  std::string hypothesis;
  std::vector<std::string> references;  // never empty
  std::optional<DialogueActSet> acts;
};

// Instances in file order; ids are pairwise distinct.
struct Corpus {
  std::vector<EvalInstance> instances;

  bool empty() const { return instances.empty(); }
  std::size_t size() const { return instances.size(); }
};

// jsonl schema, one record per line:
//   {"id": "...", "hypothesis": "...", "references": ["...", ...],
//    "acts": [{"act": "...", "slots": [{"type": "...", "value": "..."}]}]}
// "acts" is optional; a slot's "value" is optional. Input must be valid
// UTF-8. Throws DataError with the offending line number.
Corpus load_corpus_jsonl(std::istream& in);

// Parallel text: one hypothesis file plus N reference files of equal line
// count; line k of each reference file becomes reference k of instance k.
// Ids are 1-based line numbers.
Corpus load_corpus_parallel(std::istream& hyp,
                            const std::vector<std::istream*>& refs);

// Inverse of load_corpus_jsonl: reloading the output yields an identical
// corpus.
void save_corpus_jsonl(const Corpus& corpus, std::ostream& out);

// Immutable word -> vector table in word2vec text format: one
// `word v1 ... vd` line per entry, optional `count dim` header line.
// Duplicate words: last occurrence wins.
class EmbeddingTable {
 public:
  static EmbeddingTable load(std::istream& in);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  // nullptr when the word is out of vocabulary.
  const std::vector<double>* find(std::string_view word) const;

  void insert(std::string word, std::vector<double> vec);

  const std::unordered_map<std::string, std::vector<double>>& entries() const {
    return entries_;
  }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

// Precomputed sentence vectors (same text format, keyed by sentence id).
class SentenceVectorTable {
 public:
  static SentenceVectorTable load(std::istream& in);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  const std::vector<double>* find(std::string_view id) const;

  void insert(std::string id, std::vector<double> vec);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

// item x rater grid of Likert scores in [1,5]; missing entries allowed.
struct RatingMatrix {
  std::vector<std::string> items;   // first-seen order
  std::vector<std::string> raters;  // first-seen order
  std::map<std::pair<std::string, std::string>, int> scores;  // (item, rater)

  std::optional<int> score(const std::string& item,
                           const std::string& rater) const;
  void add(const std::string& item, const std::string& rater, int value);
};

// CSV with header `item_id,rater_id,score`. Duplicate (item, rater) pairs
// and scores outside 1..5 are errors.
RatingMatrix load_ratings(std::istream& in);

// Byte offset of the first invalid UTF-8 sequence, or nullopt if valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

}  // namespace nlgm
