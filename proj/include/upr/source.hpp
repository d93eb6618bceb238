#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace upr {

// One source file plus a byte-offset index of line starts. Offsets are
// bytes; text is expected to be UTF-8 and is never re-encoded.
struct SourceUnit {
  std::string path;
  std::string text;
  std::vector<std::size_t> line_index;  // offset of each line start, [0] == 0

  static SourceUnit from_string(std::string text, std::string path = "<memory>") {
    SourceUnit unit;
    unit.path = std::move(path);
    unit.text = std::move(text);
    unit.rebuild_line_index();
    return unit;
  }

  static SourceUnit from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read source file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
  }

  void rebuild_line_index() {
    line_index.clear();
    line_index.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_index.push_back(i + 1);
  }

  // 1-based line number containing the byte at `offset`.
  int line_of(std::size_t offset) const {
    std::size_t lo = 0, hi = line_index.size();
    while (lo + 1 < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (line_index[mid] <= offset) lo = mid; else hi = mid;
    }
    return static_cast<int>(lo) + 1;
  }

  // 1-based column of the byte at `offset`.
  int col_of(std::size_t offset) const {
    int line = line_of(offset);
    return static_cast<int>(offset - line_index[line - 1]) + 1;
  }

  std::string slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > text.size()) return {};
    return text.substr(begin, end - begin);
  }
};

}  // namespace upr
