#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nlgm {

// One (act, slot-type, slot-value) triple, e.g. inform(food = Chinese).
// An act may come without a slot, and a slot may come without a value
// (request(area)); a value is only valid alongside a slot type.
struct DialogueAct {
  std::string act;
  std::optional<std::string> slot_type;
  std::optional<std::string> slot_value;
};

struct DialogueActSet {
  std::vector<DialogueAct> entries;

  bool empty() const { return entries.empty(); }
};

}  // namespace nlgm
