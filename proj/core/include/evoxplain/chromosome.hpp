#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evoxplain {

class SuperpixelMap;

/// Binary superpixel selection: bit j == 1 keeps superpixel j, 0 blackens it.
class Chromosome {
 public:
  Chromosome() = default;
  /// Throws Error(Input) if any element is not 0 or 1.
  explicit Chromosome(std::vector<std::uint8_t> bits);

  static Chromosome ones(std::size_t n);
  static Chromosome zeros(std::size_t n);
  /// Parses a string of '0'/'1' characters.
  static Chromosome parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::size_t count_ones() const noexcept;
  std::vector<std::size_t> ones_indices() const;
  std::string to_string() const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

bool validate_chromosome(const Chromosome& c, const SuperpixelMap& map) noexcept;

}  // namespace evoxplain
