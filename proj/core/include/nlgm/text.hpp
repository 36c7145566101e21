#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nlgm {

// Token sequence of a single sentence. Tokens are non-empty and contain no
// whitespace; the sequence itself may be empty (degenerate sentence).
using TokenSeq = std::vector<std::string>;

// Lowercases (ASCII), gives each of . , ! ? ; : ' " ( ) its own token, and
// splits on whitespace. "" yields an empty sequence. Idempotent on its own
// output re-joined with spaces.
TokenSeq tokenize(std::string_view raw, bool lowercase = true);

std::string join_tokens(const TokenSeq& tokens);

// Counts of contiguous n-grams, keyed by the space-joined n-gram.
// Total count is max(0, |seq| - n + 1). Throws std::invalid_argument if n < 1.
using NgramCounts = std::unordered_map<std::string, int>;
NgramCounts ngrams(const TokenSeq& seq, int n);

// Longest common subsequence length, O(|a|*|b|) dynamic programming.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// English suffix-stripping stem. The Porter rule table (see
// docs/stemmer.md) is applied repeatedly until the word stops changing,
// which makes the function idempotent: stem(stem(t)) == stem(t).
// Input is lowercased; words of length <= 2 are returned unchanged.
std::string stem(std::string_view token);

// Word groups considered synonymous, loaded from a plain text file with one
// whitespace-separated group per line. Lines starting with '#' and blank
// lines are ignored. Words are lowercased on load.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  static SynonymLexicon load(std::istream& in);

  void add_group(const std::vector<std::string>& words);

  // True iff a and b share at least one group. Symmetric.
  bool same_group(std::string_view a, std::string_view b) const;

  std::size_t group_count() const { return groups_.size(); }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

// True iff a == b or the lexicon places a and b in a shared group.
bool synonym_match(std::string_view a, std::string_view b,
                   const SynonymLexicon& lex);

}  // namespace nlgm
