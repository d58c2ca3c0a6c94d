#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chromatic {

// Strength of a representation. Ordered: every strong representation is
// qualitative and every qualitative one is feeble.
enum class Level { feeble, qualitative, strong };

inline std::string_view to_string(Level level) {
  switch (level) {
    case Level::feeble: return "feeble";
    case Level::qualitative: return "qualitative";
    case Level::strong: return "strong";
  }
  return "?";
}

inline Level parse_level(std::string_view text) {
  if (text == "feeble") return Level::feeble;
  if (text == "qualitative") return Level::qualitative;
  if (text == "strong") return Level::strong;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

// Selects the chromatic algebra with n proper colours whose consistent
// proper triangles are exactly those with |{a,b,c}| in the allowed set.
class Signature {
 public:
  Signature() = default;

  Signature(std::initializer_list<int> sizes, int n) : Signature(std::vector<int>(sizes), n) {}

  Signature(const std::vector<int>& sizes, int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("signature needs n >= 1");
    for (int k : sizes) {
      if (k < 1 || k > 3) throw std::invalid_argument("triangle sizes must lie in {1,2,3}");
      mask_ |= static_cast<std::uint8_t>(1u << (k - 1));
    }
  }

  static Signature from_mask(std::uint8_t mask, int n) {
    if (mask > 7) throw std::invalid_argument("signature mask out of range");
    std::vector<int> sizes;
    for (int k = 1; k <= 3; ++k)
      if (mask & (1u << (k - 1))) sizes.push_back(k);
    return Signature(sizes, n);
  }

  int n() const { return n_; }
  std::uint8_t mask() const { return mask_; }

  bool allows(int size) const { return size >= 1 && size <= 3 && (mask_ >> (size - 1)) & 1u; }
  bool forbids(int size) const { return size >= 1 && size <= 3 && !allows(size); }

  std::vector<int> allowed() const {
    std::vector<int> out;
    for (int k = 1; k <= 3; ++k)
      if (allows(k)) out.push_back(k);
    return out;
  }

  // F = {1,2,3} \ S, always derived.
  std::vector<int> forbidden() const {
    std::vector<int> out;
    for (int k = 1; k <= 3; ++k)
      if (!allows(k)) out.push_back(k);
    return out;
  }

  // "{1,3}" style rendering; the empty set is "{}".
  std::string set_string() const {
    std::string out = "{";
    bool first = true;
    for (int k : allowed()) {
      if (!first) out += ",";
      out += std::to_string(k);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::uint8_t mask_ = 0;
  int n_ = 1;
};

// Parses "1,3" / "" / "none" into triangle sizes.
inline std::vector<int> parse_sizes(std::string_view text) {
  std::vector<int> out;
  if (text.empty() || text == "none" || text == "{}") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    if (tok.size() != 1 || tok[0] < '1' || tok[0] > '3')
      throw std::invalid_argument("bad triangle size '" + std::string(tok) + "'");
    int k = tok[0] - '0';
    for (int seen : out)
      if (seen == k) throw std::invalid_argument("duplicate triangle size");
    out.push_back(k);
    pos = comma + 1;
  }
  return out;
}

}  // namespace chromatic
