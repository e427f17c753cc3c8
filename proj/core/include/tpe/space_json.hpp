#pragma once

#include <string>

#include "tpe/search_space.hpp"

namespace tpe {

// Search-space declaration format: a JSON array of dimension objects
//   {"name": ..., "type": "continuous|discrete|categorical",
//    "low", "high", "log", "step", "choices",
//    "condition": "<dim> == <value>" | "<dim> >= <value>"}
// Conditions compare one parent dimension against a number or a category
// label and evaluate false while the parent is inactive.
SearchSpace space_from_json(const std::string &json_text);

std::string space_to_json(const SearchSpace &space);

} // namespace tpe
