#include "nlgm/text.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace nlgm {

namespace {

bool is_split_punct(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';':
    case ':': case '\'': case '"': case '(': case ')':
      return true;
    default:
      return false;
  }
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

TokenSeq tokenize(std::string_view raw, bool lowercase) {
  TokenSeq tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_split_punct(c)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current.push_back(lowercase ? ascii_lower(c) : c);
    }
  }
  flush();
  return tokens;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

NgramCounts ngrams(const TokenSeq& seq, int n) {
  if (n < 1) {
    throw std::invalid_argument("ngrams: n must be >= 1");
  }
  NgramCounts counts;
  const std::size_t width = static_cast<std::size_t>(n);
  if (seq.size() < width) return counts;
  for (std::size_t i = 0; i + width <= seq.size(); ++i) {
    std::string key = seq[i];
    for (std::size_t j = 1; j < width; ++j) {
      key.push_back(' ');
      key += seq[i + j];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  // two-row DP over the shorter sequence as the inner dimension
  const TokenSeq& rows = a.size() >= b.size() ? a : b;
  const TokenSeq& cols = a.size() >= b.size() ? b : a;
  std::vector<std::size_t> prev(cols.size() + 1, 0);
  std::vector<std::size_t> cur(cols.size() + 1, 0);
  for (std::size_t i = 1; i <= rows.size(); ++i) {
    for (std::size_t j = 1; j <= cols.size(); ++j) {
      if (rows[i - 1] == cols[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[cols.size()];
}

SynonymLexicon SynonymLexicon::load(std::istream& in) {
  SynonymLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> words;
    std::string word;
    while (fields >> word) {
      std::transform(word.begin(), word.end(), word.begin(), ascii_lower);
      words.push_back(word);
    }
    if (words.size() >= 2) {
      lex.add_group(words);
    }
  }
  return lex;
}

void SynonymLexicon::add_group(const std::vector<std::string>& words) {
  const std::size_t id = groups_.size();
  groups_.push_back(words);
  for (const std::string& w : words) {
    index_[w].push_back(id);
  }
}

bool SynonymLexicon::same_group(std::string_view a, std::string_view b) const {
  auto ia = index_.find(std::string(a));
  if (ia == index_.end()) return false;
  auto ib = index_.find(std::string(b));
  if (ib == index_.end()) return false;
  for (std::size_t ga : ia->second) {
    for (std::size_t gb : ib->second) {
      if (ga == gb) return true;
    }
  }
  return false;
}

bool synonym_match(std::string_view a, std::string_view b,
                   const SynonymLexicon& lex) {
  return a == b || lex.same_group(a, b);
}

}  // namespace nlgm
