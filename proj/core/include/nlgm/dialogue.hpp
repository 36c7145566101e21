#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nlgm/corpus.hpp"
#include "nlgm/dialogue_acts.hpp"
#include "nlgm/text.hpp"

namespace nlgm {

// Canonical fused act-slot key: ACT-SLOTTYPE uppercased, bare ACT when the
// act carries no slot. Characters outside [A-Za-z0-9] map to '_' so the key
// is always a single token.
std::string fuse_key(const DialogueAct& act);

// Set of fused keys; order and duplicates erased.
using DASignature = std::set<std::string>;

DASignature da_signature(const DialogueActSet& acts);

// Sorted, deduplicated fused keys over every annotated instance.
// Throws DataError when no instance carries act annotations.
std::vector<std::string> build_da_vocabulary(const Corpus& corpus);

// Binary vector over a fixed act-slot vocabulary.
struct DAVector {
  std::vector<std::uint8_t> bits;
};

// Throws DataError naming any act-slot pair absent from vocab.
DAVector encode_da_vector(const DialogueActSet& acts,
                          const std::vector<std::string>& vocab);

// yes / no / dontcare (also "don't care"), compared case-insensitively and
// ignoring apostrophes and spaces. These are never substituted by
// delexicalize and never counted by slot_error_rate.
bool is_special_slot_value(std::string_view value);

// Placeholder token for a slot type ("food" -> "FOOD").
std::string placeholder_token(std::string_view slot_type);
bool is_placeholder_token(std::string_view token);

enum class SubstitutionStatus {
  replaced,  // at least one occurrence substituted
  unplaced,  // value not found in the sentence
  special,   // special value, substitution skipped
};

struct Substitution {
  std::string slot_type;
  std::string value;
  int occurrences = 0;
  SubstitutionStatus status = SubstitutionStatus::unplaced;
};

struct DelexResult {
  std::string text;  // space-joined tokens, placeholders uppercase
  std::vector<Substitution> substitutions;
};

// Tokenizes the sentence and replaces every occurrence of each slot value
// (longest value first, case-insensitive, at token boundaries) with its
// placeholder. Values never overlap-substitute: once a token is consumed by
// a placeholder it cannot match again.
DelexResult delexicalize(std::string_view sentence, const DialogueActSet& acts);

// Replaces placeholders with slot values left to right; repeated
// placeholders of one type consume that type's values in act order. When
// strict (the default), a placeholder with no available value throws
// DataError; otherwise it is left verbatim (used by the retrieval baseline
// when backing off to a neighbouring signature).
std::string relexicalize(std::string_view delex_sentence,
                         const DialogueActSet& acts, bool strict = true);

// (missing + redundant) / required over the candidate's placeholders, where
// required counts the valued, non-special slots of acts. nullopt when
// required is 0 (rate undefined rather than trivially perfect).
std::optional<double> slot_error_rate(const TokenSeq& delex_candidate,
                                      const DialogueActSet& acts);

// Delexicalized training references bucketed by dialogue-act signature.
class BaselineIndex {
 public:
  // References of annotated instances are delexicalized with their own acts
  // and stored under the instance signature; instances without acts are
  // skipped and counted.
  static BaselineIndex build(const Corpus& train);

  bool empty() const { return buckets_.empty(); }
  std::size_t bucket_count() const { return buckets_.size(); }
  std::size_t skipped_instances() const { return skipped_; }

  const std::vector<std::string>* find_exact(const DASignature& sig) const;

  // Stored signature with maximal Jaccard similarity over fused keys;
  // ties resolve to the lexicographically first signature.
  const DASignature* nearest(const DASignature& sig) const;

  const std::map<DASignature, std::vector<std::string>>& buckets() const {
    return buckets_;
  }

 private:
  std::map<DASignature, std::vector<std::string>> buckets_;
  std::size_t skipped_ = 0;
};

// Uniform draw from the exact-signature bucket (falling back to the nearest
// signature when unseen), relexicalized with the query's slot values.
// Deterministic under a fixed rng state. Throws DataError on an empty index.
std::string baseline_generate(const DialogueActSet& acts,
                              const BaselineIndex& index, std::mt19937_64& rng);

}  // namespace nlgm
