#include "optrun/mission.hpp"

#include <fstream>
#include <sstream>

namespace optrun {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Mission parse_mission(const std::string& text, const std::filesystem::path& base_dir) {
  std::string ts_path, formula_text, optimize_text;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto colon = body.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'key: value'", lineno, 1);
    }
    const std::string key = trim(body.substr(0, colon));
    const std::string value = trim(body.substr(colon + 1));
    if (key == "ts") {
      ts_path = value;
    } else if (key == "formula") {
      formula_text = value;
    } else if (key == "optimize") {
      optimize_text = value;
    } else {
      throw ParseError("unknown mission key '" + key + "'", lineno, 1);
    }
  }
  if (ts_path.empty()) throw std::runtime_error("mission file misses a 'ts:' entry");
  if (formula_text.empty()) throw std::runtime_error("mission file misses a 'formula:' entry");
  if (optimize_text.empty()) throw std::runtime_error("mission file misses an 'optimize:' entry");

  Mission m{TransitionSystem::parse(
                read_file(std::filesystem::path(ts_path).is_absolute()
                              ? std::filesystem::path(ts_path)
                              : base_dir / ts_path)),
            parse_ltl(formula_text),
            {},
            {},
            ts_path};

  std::istringstream opt(optimize_text);
  std::string piece;
  while (std::getline(opt, piece, '|')) {
    const std::string name = trim(piece);
    if (name.empty()) throw std::runtime_error("empty name in optimize directive");
    m.optimize.push_back(name);
  }
  for (const auto& name : m.optimize) {
    if (!m.ts.propositions().count(name)) {
      throw std::runtime_error("optimize target '" + name +
                               "' is not declared in the transition system");
    }
  }
  if (m.optimize.size() == 1) {
    m.pi = m.optimize.front();
  } else {
    if (m.ts.propositions().count(kOptProposition)) {
      throw std::runtime_error(std::string("proposition name ") + kOptProposition +
                               " is reserved for disjunctive optimize directives");
    }
    m.ts = m.ts.with_extra_label(kOptProposition, m.optimize);
    m.pi = kOptProposition;
  }
  return m;
}

Mission load_mission(const std::filesystem::path& path) {
  return parse_mission(read_file(path), path.has_parent_path()
                                            ? path.parent_path()
                                            : std::filesystem::path("."));
}

}  // namespace optrun
