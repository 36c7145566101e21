#include "nlgm/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "nlgm/error.hpp"

namespace nlgm {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail_line(std::size_t line_no, const std::string& message) {
  throw DataError("line " + std::to_string(line_no) + ": " + message);
}

void require_utf8(const std::string& line, std::size_t line_no) {
  if (auto offset = find_invalid_utf8(line)) {
    fail_line(line_no, "invalid UTF-8 at byte " + std::to_string(*offset));
  }
}

// Reads all lines, validating UTF-8 and stripping a trailing \r.
std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    require_utf8(line, lines.size() + 1);
    lines.push_back(line);
  }
  return lines;
}

bool parse_double(std::string_view field, double& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_unsigned(std::string_view field, std::size_t& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

DialogueActSet parse_acts(const json& acts_json, std::size_t line_no) {
  DialogueActSet acts;
  if (!acts_json.is_array()) {
    fail_line(line_no, "\"acts\" must be an array");
  }
  for (const json& act_json : acts_json) {
    if (!act_json.is_object() || !act_json.contains("act") ||
        !act_json["act"].is_string()) {
      fail_line(line_no, "each act needs a string \"act\" field");
    }
    const std::string act = act_json["act"].get<std::string>();
    if (act.empty()) {
      fail_line(line_no, "act name must be non-empty");
    }
    if (!act_json.contains("slots") || act_json["slots"].empty()) {
      acts.entries.push_back({act, std::nullopt, std::nullopt});
      continue;
    }
    if (!act_json["slots"].is_array()) {
      fail_line(line_no, "\"slots\" must be an array");
    }
    for (const json& slot : act_json["slots"]) {
      if (!slot.is_object() || !slot.contains("type") ||
          !slot["type"].is_string()) {
        fail_line(line_no, "each slot needs a string \"type\" field");
      }
      DialogueAct entry{act, slot["type"].get<std::string>(), std::nullopt};
      if (slot.contains("value") && !slot["value"].is_null()) {
        if (!slot["value"].is_string()) {
          fail_line(line_no, "slot \"value\" must be a string");
        }
        entry.slot_value = slot["value"].get<std::string>();
      }
      acts.entries.push_back(std::move(entry));
    }
  }
  return acts;
}

}  // namespace

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char b = bytes[i];
    std::size_t len;
    if (b < 0x80) {
      len = 1;
    } else if (b >= 0xC2 && b <= 0xDF) {
      len = 2;
    } else if (b >= 0xE0 && b <= 0xEF) {
      len = 3;
    } else if (b >= 0xF0 && b <= 0xF4) {
      len = 4;
    } else {
      return i;  // stray continuation byte or overlong/invalid lead
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((bytes[i + k] & 0xC0) != 0x80) return i;
    }
    if (len == 3) {
      if (b == 0xE0 && bytes[i + 1] < 0xA0) return i;          // overlong
      if (b == 0xED && bytes[i + 1] >= 0xA0) return i;         // surrogates
    } else if (len == 4) {
      if (b == 0xF0 && bytes[i + 1] < 0x90) return i;          // overlong
      if (b == 0xF4 && bytes[i + 1] >= 0x90) return i;         // > U+10FFFF
    }
    i += len;
  }
  return std::nullopt;
}

Corpus load_corpus_jsonl(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    require_utf8(line, line_no);

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(line_no, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) {
      fail_line(line_no, "record must be a JSON object");
    }

    EvalInstance inst;
    if (!record.contains("id")) {
      fail_line(line_no, "missing \"id\"");
    }
    if (record["id"].is_string()) {
      inst.id = record["id"].get<std::string>();
    } else if (record["id"].is_number_integer()) {
      inst.id = std::to_string(record["id"].get<long long>());
    } else {
      fail_line(line_no, "\"id\" must be a string");
    }
    if (!seen_ids.insert(inst.id).second) {
      fail_line(line_no, "duplicate id \"" + inst.id + "\"");
    }

    if (!record.contains("hypothesis") || !record["hypothesis"].is_string()) {
      fail_line(line_no, "missing string \"hypothesis\"");
    }
    inst.hypothesis = record["hypothesis"].get<std::string>();

    if (!record.contains("references") || !record["references"].is_array()) {
      fail_line(line_no, "missing array \"references\"");
    }
    for (const json& ref : record["references"]) {
      if (!ref.is_string()) {
        fail_line(line_no, "references must be strings");
      }
      inst.references.push_back(ref.get<std::string>());
    }
    if (inst.references.empty()) {
      fail_line(line_no, "empty reference list");
    }

    if (record.contains("acts") && !record["acts"].is_null()) {
      inst.acts = parse_acts(record["acts"], line_no);
    }
    corpus.instances.push_back(std::move(inst));
  }
  return corpus;
}

Corpus load_corpus_parallel(std::istream& hyp,
                            const std::vector<std::istream*>& refs) {
  if (refs.empty()) {
    throw std::invalid_argument(
        "load_corpus_parallel: at least one reference stream required");
  }
  const std::vector<std::string> hyp_lines = read_lines(hyp);
  std::vector<std::vector<std::string>> ref_lines;
  ref_lines.reserve(refs.size());
  for (std::size_t k = 0; k < refs.size(); ++k) {
    ref_lines.push_back(read_lines(*refs[k]));
    if (ref_lines.back().size() != hyp_lines.size()) {
      throw DataError("unequal line counts: hypothesis file has " +
                      std::to_string(hyp_lines.size()) + " lines, reference file " +
                      std::to_string(k + 1) + " has " +
                      std::to_string(ref_lines.back().size()));
    }
  }
  Corpus corpus;
  corpus.instances.reserve(hyp_lines.size());
  for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
    EvalInstance inst;
    inst.id = std::to_string(i + 1);
    inst.hypothesis = hyp_lines[i];
    for (const auto& file : ref_lines) {
      inst.references.push_back(file[i]);
    }
    corpus.instances.push_back(std::move(inst));
  }
  return corpus;
}

void save_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const EvalInstance& inst : corpus.instances) {
    json record;
    record["id"] = inst.id;
    record["hypothesis"] = inst.hypothesis;
    record["references"] = inst.references;
    if (inst.acts) {
      json acts = json::array();
      for (const DialogueAct& act : inst.acts->entries) {
        json a;
        a["act"] = act.act;
        if (act.slot_type) {
          json slot;
          slot["type"] = *act.slot_type;
          if (act.slot_value) slot["value"] = *act.slot_value;
          a["slots"] = json::array({slot});
        }
        acts.push_back(std::move(a));
      }
      record["acts"] = std::move(acts);
    }
    out << record.dump() << '\n';
  }
}

namespace {

// Shared word2vec-style text parser for embeddings and sentence vectors.
template <typename Table>
Table load_vector_table(std::istream& in, const char* what) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool first_data_line = true;
  std::size_t entries = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    require_utf8(line, line_no);
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (first_data_line && fields.size() == 2) {
      // optional `count dim` header
      std::size_t a, b;
      if (parse_unsigned(fields[0], a) && parse_unsigned(fields[1], b)) {
        first_data_line = false;
        continue;
      }
    }
    first_data_line = false;

    if (fields.size() < 2) {
      fail_line(line_no, std::string("expected `") + what + " v1 ... vd`");
    }
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v;
      if (!parse_double(fields[i], v)) {
        fail_line(line_no, "non-numeric component \"" + std::string(fields[i]) +
                               "\"");
      }
      vec.push_back(v);
    }
    if (dim == 0) {
      dim = vec.size();
    } else if (vec.size() != dim) {
      fail_line(line_no, "inconsistent dimension (expected " +
                             std::to_string(dim) + ", got " +
                             std::to_string(vec.size()) + ")");
    }
    table.insert(std::string(fields[0]), std::move(vec));
    ++entries;
  }
  if (entries == 0) {
    throw DataError("empty file");
  }
  return table;
}

}  // namespace

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  return load_vector_table<EmbeddingTable>(in, "word");
}

const std::vector<double>* EmbeddingTable::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

void EmbeddingTable::insert(std::string word, std::vector<double> vec) {
  dim_ = vec.size();
  entries_[std::move(word)] = std::move(vec);  // last wins
}

SentenceVectorTable SentenceVectorTable::load(std::istream& in) {
  return load_vector_table<SentenceVectorTable>(in, "sentence-id");
}

const std::vector<double>* SentenceVectorTable::find(
    std::string_view id) const {
  auto it = entries_.find(std::string(id));
  return it == entries_.end() ? nullptr : &it->second;
}

void SentenceVectorTable::insert(std::string id, std::vector<double> vec) {
  dim_ = vec.size();
  entries_[std::move(id)] = std::move(vec);
}

std::optional<int> RatingMatrix::score(const std::string& item,
                                       const std::string& rater) const {
  auto it = scores.find({item, rater});
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

void RatingMatrix::add(const std::string& item, const std::string& rater,
                       int value) {
  if (std::find(items.begin(), items.end(), item) == items.end()) {
    items.push_back(item);
  }
  if (std::find(raters.begin(), raters.end(), rater) == raters.end()) {
    raters.push_back(rater);
  }
  scores[{item, rater}] = value;
}

RatingMatrix load_ratings(std::istream& in) {
  RatingMatrix matrix;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    require_utf8(line, line_no);

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "item_id" ||
          fields[1] != "rater_id" || fields[2] != "score") {
        fail_line(line_no, "expected header `item_id,rater_id,score`");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      fail_line(line_no, "expected 3 fields, got " +
                             std::to_string(fields.size()));
    }
    int score = 0;
    {
      const std::string& s = fields[2];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), score);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail_line(line_no, "non-integer score \"" + s + "\"");
      }
    }
    if (score < 1 || score > 5) {
      fail_line(line_no, "score out of range: " + std::to_string(score));
    }
    if (matrix.scores.count({fields[0], fields[1]}) > 0) {
      fail_line(line_no, "duplicate rating for (" + fields[0] + ", " +
                             fields[1] + ")");
    }
    matrix.add(fields[0], fields[1], score);
  }
  if (!header_seen) {
    throw DataError("empty ratings file");
  }
  return matrix;
}

}  // namespace nlgm
