#include "glab/prefix.hpp"

#include "glab/errors.hpp"

namespace glab {

namespace {

int hex_digit(char c, std::size_t offset) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw parse_error("invalid hex digit at offset " + std::to_string(offset));
}

}  // namespace

Prefix Prefix::from_bits(std::string_view bits01) {
  Prefix p;
  p.bits_.reserve(bits01.size());
  for (std::size_t i = 0; i < bits01.size(); ++i) {
    char c = bits01[i];
    if (c != '0' && c != '1')
      throw parse_error("invalid bit character at offset " + std::to_string(i));
    p.bits_.push_back(static_cast<std::uint8_t>(c == '1'));
  }
  return p;
}

Prefix Prefix::from_positions(const std::vector<std::uint64_t>& ones,
                              std::size_t length) {
  Prefix p(length);
  for (auto pos : ones) {
    if (pos >= length)
      throw precondition_error("one-position " + std::to_string(pos) +
                               " outside prefix of length " +
                               std::to_string(length));
    p.bits_[pos] = 1;
  }
  return p;
}

Prefix Prefix::from_hex(const std::string& hex, std::size_t length) {
  if (hex.size() * 4 < length)
    throw parse_error("hex string too short for declared length " +
                      std::to_string(length));
  Prefix p(length);
  for (std::size_t i = 0; i < length; ++i) {
    int nibble = hex_digit(hex[i / 4], i / 4);
    p.bits_[i] = static_cast<std::uint8_t>((nibble >> (3 - (i % 4))) & 1);
  }
  return p;
}

int Prefix::bit(std::size_t i) const {
  if (i >= bits_.size())
    throw precondition_error("bit index " + std::to_string(i) +
                             " out of range for prefix of length " +
                             std::to_string(bits_.size()));
  return bits_[i];
}

void Prefix::set(std::size_t i, int v) {
  if (i >= bits_.size())
    throw precondition_error("bit index out of range in Prefix::set");
  bits_[i] = static_cast<std::uint8_t>(v != 0);
}

std::uint64_t Prefix::ones_in(std::size_t lo, std::size_t hi) const {
  if (lo > hi || hi > bits_.size())
    throw precondition_error("bad range in Prefix::ones_in");
  std::uint64_t count = 0;
  for (std::size_t i = lo; i < hi; ++i) count += bits_[i];
  return count;
}

std::uint64_t Prefix::zeros_below(std::size_t n) const {
  return n - ones_below(n);
}

std::string Prefix::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out((bits_.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      std::size_t j = i / 4;
      int nibble = hex_digit(out[j], j);
      nibble |= 1 << (3 - (i % 4));
      out[j] = digits[nibble];
    }
  }
  return out;
}

std::string Prefix::to_bits() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace glab
