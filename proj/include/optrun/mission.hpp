// Mission files bundle a transition-system file, a formula, and the
// optimizing proposition. Key-value lines, '#' comments:
//
//   ts: road-network.ts
//   formula: G F P1 && G F P4
//   optimize: P2 | P3
//
// A disjunctive optimize directive adds the reserved proposition __opt to
// every state satisfying one of the listed propositions and optimizes that.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "optrun/ltl.hpp"
#include "optrun/ts.hpp"

namespace optrun {

inline constexpr const char* kOptProposition = "__opt";

struct Mission {
  TransitionSystem ts;  // labels already rewritten for disjunctive targets
  Formula formula;
  std::string pi;                     // effective optimizing proposition
  std::vector<std::string> optimize;  // as listed in the file
  std::string ts_path;                // as written in the file
};

// Relative ts paths resolve against base_dir.
Mission parse_mission(const std::string& text, const std::filesystem::path& base_dir);
Mission load_mission(const std::filesystem::path& path);

}  // namespace optrun
