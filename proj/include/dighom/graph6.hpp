#pragma once

// graph6 codec, short form only (n <= 62).

#include <string>
#include <string_view>

#include "dighom/image.hpp"

namespace dighom {

class graph6_error : public error {
 public:
  graph6_error(const std::string& what, std::size_t offset)
      : error("graph6: " + what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr std::size_t graph6_max_vertices = 62;

inline DigitalImage parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw graph6_error("empty input", 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < 63 || text[i] > 126) throw graph6_error("invalid character", i);
  }
  if (text[0] == 126) throw graph6_error("long form (n > 62) is not supported", 0);
  const std::size_t n = static_cast<std::size_t>(text[0] - 63);
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t expected = 1 + (bits + 5) / 6;
  if (text.size() != expected) {
    throw graph6_error("length " + std::to_string(text.size()) + " does not match " +
                           std::to_string(expected) + " for " + std::to_string(n) + " points",
                       std::min(text.size(), expected));
  }
  std::vector<VertexSet> rows(n, 0);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int chunk = text[1 + k / 6] - 63;
      if ((chunk >> (5 - k % 6)) & 1) {
        rows[i] |= bit(j);
        rows[j] |= bit(i);
      }
    }
  }
  // Padding bits must be zero.
  for (; k % 6 != 0; ++k) {
    if (((text[1 + k / 6] - 63) >> (5 - k % 6)) & 1) throw graph6_error("nonzero padding bit", 1 + k / 6);
  }
  return DigitalImage::from_rows(std::move(rows));
}

inline std::string encode_graph6(const DigitalImage& img) {
  const std::size_t n = img.size();
  if (n > graph6_max_vertices) throw error("graph6 short form holds at most 62 points");
  std::string out(1, static_cast<char>(63 + n));
  int chunk = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (img.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (chunk << (6 - filled))));
  return out;
}

}  // namespace dighom
