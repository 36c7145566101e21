// Porter suffix-stripping stemmer. The rule table below transcribes the
// published 1980 algorithm; docs/stemmer.md carries the same table in
// prose form and is the normative reference for this implementation.
// Unlike the classic single pass, stem() reapplies the whole step sequence
// until the word stops changing, which makes it idempotent.

#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "nlgm/text.hpp"

namespace nlgm {

namespace {

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Consonant: any letter but a,e,i,o,u, and y only when not preceded by a
// consonant (so "toy" ends in a consonant, "syzygy" alternates).
bool is_consonant(const std::string& w, std::size_t i) {
  const char c = w[i];
  if (is_vowel_letter(c)) return false;
  if (c == 'y') {
    return i == 0 || !is_consonant(w, i - 1);
  }
  return true;
}

// m in the [C](VC)^m[V] decomposition of the stem.
int measure(const std::string& stem) {
  int m = 0;
  bool in_vowel_run = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) {
      in_vowel_run = true;
    } else if (in_vowel_run) {
      ++m;
      in_vowel_run = false;
    }
  }
  return m;
}

bool contains_vowel(const std::string& stem) {
  for (std::size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w) {
  return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
         is_consonant(w, w.size() - 1);
}

// *o: ends consonant-vowel-consonant where the final consonant is not w,x,y.
bool ends_cvc(const std::string& w) {
  if (w.size() < 3) return false;
  const std::size_t k = w.size();
  if (!is_consonant(w, k - 3) || is_consonant(w, k - 2) ||
      !is_consonant(w, k - 1)) {
    return false;
  }
  const char last = w[k - 1];
  return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

enum class Condition { always, m_positive, m_gt1, m_gt1_ion };

// Within a step the longest matching suffix decides; if its condition
// fails, no other rule of the step fires.
bool apply_rules(std::string& w, const Rule* rules, std::size_t count,
                 Condition cond) {
  const Rule* best = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    if (ends_with(w, rules[i].suffix) &&
        (best == nullptr || rules[i].suffix.size() > best->suffix.size())) {
      best = &rules[i];
    }
  }
  if (best == nullptr) return false;
  std::string stem = w.substr(0, w.size() - best->suffix.size());
  bool ok = true;
  switch (cond) {
    case Condition::always:
      break;
    case Condition::m_positive:
      ok = measure(stem) > 0;
      break;
    case Condition::m_gt1:
      ok = measure(stem) > 1;
      break;
    case Condition::m_gt1_ion:
      ok = measure(stem) > 1 &&
           (best->suffix != "ion" ||
            (!stem.empty() && (stem.back() == 's' || stem.back() == 't')));
      break;
  }
  if (!ok) return false;
  w = stem + std::string(best->replacement);
  return true;
}

void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> rules{{
      {"sses", "ss"}, {"ies", "i"}, {"ss", "ss"}, {"s", ""}}};
  apply_rules(w, rules.data(), rules.size(), Condition::always);
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (measure(stem) > 0) {
      w = stem + "ee";
    }
    return;
  }
  bool removed = false;
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (contains_vowel(stem)) {
      w = stem;
      removed = true;
    }
  } else if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (contains_vowel(stem)) {
      w = stem;
      removed = true;
    }
  }
  if (!removed) return;
  static constexpr std::array<Rule, 3> cleanup{{
      {"at", "ate"}, {"bl", "ble"}, {"iz", "ize"}}};
  if (apply_rules(w, cleanup.data(), cleanup.size(), Condition::always)) {
    return;
  }
  if (ends_double_consonant(w)) {
    const char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') {
      w.pop_back();
    }
    return;
  }
  if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w.substr(0, w.size() - 1))) {
    w.back() = 'i';
  }
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"}}};
  apply_rules(w, rules.data(), rules.size(), Condition::m_positive);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""}}};
  apply_rules(w, rules.data(), rules.size(), Condition::m_positive);
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
      {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""},
      {"ment", ""},  {"ent", ""},  {"ion", ""},  {"ou", ""},  {"ism", ""},
      {"ate", ""},   {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""}}};
  apply_rules(w, rules.data(), rules.size(), Condition::m_gt1_ion);
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string stem = w.substr(0, w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) {
    w = stem;
  }
}

void step5b(std::string& w) {
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') {
    w.pop_back();
  }
}

std::string one_pass(std::string w) {
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace

std::string stem(std::string_view token) {
  std::string w(token);
  for (char& c : w) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (w.size() <= 2) return w;
  for (;;) {
    std::string next = one_pass(w);
    if (next == w) return w;
    w = std::move(next);
    if (w.size() <= 2) return w;
  }
}

}  // namespace nlgm
