#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(MATURITY_FIXTURES_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(MATURITY_GOLDEN_DIR) + "/" + name;
}
