#include "nlgm/dialogue.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "nlgm/error.hpp"
#include "nlgm/rng.hpp"

namespace nlgm {

namespace {

std::string canonical_upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(
          static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    } else {
      out.push_back('_');
    }
  }
  return out;
}

std::vector<std::string> whitespace_split(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace

std::string fuse_key(const DialogueAct& act) {
  std::string key = canonical_upper(act.act);
  if (act.slot_type) {
    key.push_back('-');
    key += canonical_upper(*act.slot_type);
  }
  return key;
}

DASignature da_signature(const DialogueActSet& acts) {
  DASignature sig;
  for (const DialogueAct& act : acts.entries) {
    sig.insert(fuse_key(act));
  }
  return sig;
}

std::vector<std::string> build_da_vocabulary(const Corpus& corpus) {
  DASignature keys;
  bool any_annotated = false;
  for (const EvalInstance& inst : corpus.instances) {
    if (!inst.acts) continue;
    any_annotated = true;
    for (const DialogueAct& act : inst.acts->entries) {
      keys.insert(fuse_key(act));
    }
  }
  if (!any_annotated) {
    throw DataError("corpus carries no dialogue-act annotations");
  }
  return {keys.begin(), keys.end()};
}

DAVector encode_da_vector(const DialogueActSet& acts,
                          const std::vector<std::string>& vocab) {
  DAVector vec;
  vec.bits.assign(vocab.size(), 0);
  for (const DialogueAct& act : acts.entries) {
    const std::string key = fuse_key(act);
    auto it = std::lower_bound(vocab.begin(), vocab.end(), key);
    if (it == vocab.end() || *it != key) {
      // vocab may be unsorted when built by hand; fall back to a scan
      it = std::find(vocab.begin(), vocab.end(), key);
      if (it == vocab.end()) {
        throw DataError("act-slot pair \"" + key + "\" not in vocabulary");
      }
    }
    vec.bits[static_cast<std::size_t>(it - vocab.begin())] = 1;
  }
  return vec;
}

bool is_special_slot_value(std::string_view value) {
  std::string folded;
  for (char c : value) {
    if (c == '\'' || c == ' ' || c == '\t') continue;
    folded.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return folded == "yes" || folded == "no" || folded == "dontcare";
}

std::string placeholder_token(std::string_view slot_type) {
  return canonical_upper(slot_type);
}

bool is_placeholder_token(std::string_view token) {
  if (token.size() < 2) return false;
  bool has_letter = false;
  for (char c : token) {
    if (c >= 'A' && c <= 'Z') {
      has_letter = true;
    } else if (c != '_' && !(c >= '0' && c <= '9')) {
      return false;
    }
  }
  return has_letter;
}

DelexResult delexicalize(std::string_view sentence,
                         const DialogueActSet& acts) {
  DelexResult result;
  TokenSeq tokens = tokenize(sentence);
  std::vector<bool> consumed(tokens.size(), false);

  struct Candidate {
    TokenSeq value_tokens;
    std::string placeholder;
    std::size_t substitution;  // index into result.substitutions
  };
  std::vector<Candidate> candidates;
  for (const DialogueAct& act : acts.entries) {
    if (!act.slot_type || !act.slot_value) continue;
    Substitution sub;
    sub.slot_type = *act.slot_type;
    sub.value = *act.slot_value;
    if (is_special_slot_value(*act.slot_value)) {
      sub.status = SubstitutionStatus::special;
      result.substitutions.push_back(std::move(sub));
      continue;
    }
    sub.status = SubstitutionStatus::unplaced;
    result.substitutions.push_back(std::move(sub));
    candidates.push_back({tokenize(*act.slot_value),
                          placeholder_token(*act.slot_type),
                          result.substitutions.size() - 1});
  }

  // Longest value first so "north part" wins over "north"; remaining keys
  // only break ties deterministically.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.value_tokens.size() != b.value_tokens.size()) {
                       return a.value_tokens.size() > b.value_tokens.size();
                     }
                     return join_tokens(a.value_tokens).size() >
                            join_tokens(b.value_tokens).size();
                   });

  for (const Candidate& cand : candidates) {
    const std::size_t len = cand.value_tokens.size();
    if (len == 0 || len > tokens.size()) continue;
    std::size_t i = 0;
    while (i + len <= tokens.size()) {
      bool match = true;
      for (std::size_t k = 0; k < len; ++k) {
        if (consumed[i + k] || tokens[i + k] != cand.value_tokens[k]) {
          match = false;
          break;
        }
      }
      if (!match) {
        ++i;
        continue;
      }
      tokens[i] = cand.placeholder;
      consumed[i] = true;
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
      consumed.erase(consumed.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                     consumed.begin() + static_cast<std::ptrdiff_t>(i + len));
      Substitution& sub = result.substitutions[cand.substitution];
      ++sub.occurrences;
      sub.status = SubstitutionStatus::replaced;
      ++i;
    }
  }

  result.text = join_tokens(tokens);
  return result;
}

std::string relexicalize(std::string_view delex_sentence,
                         const DialogueActSet& acts, bool strict) {
  std::unordered_map<std::string, std::deque<std::string>> values;
  for (const DialogueAct& act : acts.entries) {
    if (act.slot_type && act.slot_value) {
      values[placeholder_token(*act.slot_type)].push_back(*act.slot_value);
    }
  }
  std::vector<std::string> tokens = whitespace_split(delex_sentence);
  for (std::string& token : tokens) {
    if (!is_placeholder_token(token)) continue;
    auto it = values.find(token);
    if (it == values.end() || it->second.empty()) {
      if (strict) {
        throw DataError("no value available for placeholder \"" + token +
                        "\"");
      }
      continue;
    }
    token = it->second.front();
    it->second.pop_front();
  }
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::optional<double> slot_error_rate(const TokenSeq& delex_candidate,
                                      const DialogueActSet& acts) {
  std::map<std::string, int> required;
  int required_total = 0;
  for (const DialogueAct& act : acts.entries) {
    if (!act.slot_type || !act.slot_value) continue;
    if (is_special_slot_value(*act.slot_value)) continue;
    ++required[placeholder_token(*act.slot_type)];
    ++required_total;
  }
  if (required_total == 0) return std::nullopt;

  std::map<std::string, int> present;
  for (const std::string& token : delex_candidate) {
    if (is_placeholder_token(token)) ++present[token];
  }

  int missing = 0;
  int redundant = 0;
  for (const auto& [type, count] : required) {
    const auto it = present.find(type);
    const int found = it == present.end() ? 0 : it->second;
    missing += std::max(0, count - found);
  }
  for (const auto& [type, count] : present) {
    const auto it = required.find(type);
    const int needed = it == required.end() ? 0 : it->second;
    redundant += std::max(0, count - needed);
  }
  return static_cast<double>(missing + redundant) /
         static_cast<double>(required_total);
}

BaselineIndex BaselineIndex::build(const Corpus& train) {
  BaselineIndex index;
  for (const EvalInstance& inst : train.instances) {
    if (!inst.acts || inst.acts->empty()) {
      ++index.skipped_;
      continue;
    }
    const DASignature sig = da_signature(*inst.acts);
    std::vector<std::string>& bucket = index.buckets_[sig];
    for (const std::string& ref : inst.references) {
      bucket.push_back(delexicalize(ref, *inst.acts).text);
    }
  }
  return index;
}

const std::vector<std::string>* BaselineIndex::find_exact(
    const DASignature& sig) const {
  auto it = buckets_.find(sig);
  return it == buckets_.end() ? nullptr : &it->second;
}

const DASignature* BaselineIndex::nearest(const DASignature& sig) const {
  const DASignature* best = nullptr;
  double best_score = -1.0;
  for (const auto& [stored, bucket] : buckets_) {
    std::size_t intersection = 0;
    for (const std::string& key : stored) {
      intersection += sig.count(key);
    }
    const std::size_t unions = stored.size() + sig.size() - intersection;
    const double jaccard =
        unions == 0 ? 1.0
                    : static_cast<double>(intersection) /
                          static_cast<double>(unions);
    // strict > keeps the lexicographically first signature on ties
    if (jaccard > best_score) {
      best_score = jaccard;
      best = &stored;
    }
  }
  return best;
}

std::string baseline_generate(const DialogueActSet& acts,
                              const BaselineIndex& index,
                              std::mt19937_64& rng) {
  if (index.empty()) {
    throw DataError("baseline index is empty");
  }
  const DASignature sig = da_signature(acts);
  const std::vector<std::string>* bucket = index.find_exact(sig);
  if (bucket == nullptr) {
    bucket = index.find_exact(*index.nearest(sig));
  }
  const std::string& choice = (*bucket)[uniform_index(rng, bucket->size())];
  // lenient: a backoff bucket may mention slot types the query lacks
  return relexicalize(choice, acts, /*strict=*/false);
}

}  // namespace nlgm
