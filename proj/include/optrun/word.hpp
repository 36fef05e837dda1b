#pragma once

#include <set>
#include <string>
#include <vector>

namespace optrun {

// A letter of the alphabet 2^Pi: the set of propositions true at a state.
using LabelSet = std::set<std::string>;

// Finite fragment of an infinite word.
using Word = std::vector<LabelSet>;

}  // namespace optrun
