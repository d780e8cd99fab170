#include "evoxplain/chromosome.hpp"

#include <algorithm>

#include "evoxplain/error.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain {

Chromosome::Chromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      fail(ErrorKind::Input, "chromosome element " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

Chromosome Chromosome::ones(std::size_t n) { return Chromosome(std::vector<std::uint8_t>(n, 1)); }

Chromosome Chromosome::zeros(std::size_t n) { return Chromosome(std::vector<std::uint8_t>(n, 0)); }

Chromosome Chromosome::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      fail(ErrorKind::Input, std::string("invalid chromosome character '") + ch + "'");
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return Chromosome(std::move(bits));
}

std::size_t Chromosome::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Chromosome::ones_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string Chromosome::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

bool validate_chromosome(const Chromosome& c, const SuperpixelMap& map) noexcept {
  return c.size() == map.ns();
}

}  // namespace evoxplain
