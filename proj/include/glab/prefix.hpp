#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glab {

// A finite binary approximation of a real: the universal substrate for
// every construction in this project. Immutable in spirit; the mutators
// exist only for builders.
class Prefix {
 public:
  Prefix() = default;
  explicit Prefix(std::size_t length) : bits_(length, 0) {}

  static Prefix from_bits(std::string_view bits01);
  static Prefix from_positions(const std::vector<std::uint64_t>& ones,
                               std::size_t length);
  // Hex-packed, MSB-first within each byte; length is explicit because the
  // last byte may be padded. Throws parse_error on bad input.
  static Prefix from_hex(const std::string& hex, std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  // Throws precondition_error when i >= size().
  int bit(std::size_t i) const;
  void set(std::size_t i, int v);
  void push_back(int v) { bits_.push_back(static_cast<std::uint8_t>(v != 0)); }

  std::uint64_t ones_in(std::size_t lo, std::size_t hi) const;
  std::uint64_t ones_below(std::size_t n) const { return ones_in(0, n); }
  std::uint64_t zeros_below(std::size_t n) const;

  std::string to_hex() const;
  std::string to_bits() const;

  bool operator==(const Prefix&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace glab
