#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace lazylight::test {

/// Rows of a frozen CSV under tests/golden, header skipped.
inline std::vector<std::vector<std::string>> golden_rows(const std::string& name) {
  std::ifstream in(std::string(LAZYLIGHT_GOLDEN_DIR) + "/" + name);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace lazylight::test
