#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "plumbweave/fibration.hpp"
#include "plumbweave/tree.hpp"

namespace pwtest {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string data_path(const std::string& name) { return std::string(PW_DATA_DIR) + "/" + name; }

inline plumbweave::RootedEmbeddedTree load_tree(const std::string& name) {
  return plumbweave::parse_tree(read_file(data_path(name)));
}

inline std::vector<std::string> displays(const plumbweave::AbstractLF& alf) {
  std::vector<std::string> out;
  for (const auto& c : alf.cycles) out.push_back(c.display);
  return out;
}

}  // namespace pwtest
