#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <string>
#include <vector>

#include "evoxplain/classifier.hpp"
#include "evoxplain/error.hpp"
#include "evoxplain/image.hpp"
#include "evoxplain/superpixel_map.hpp"

namespace evoxplain::test {

// Kind of the evoxplain::Error thrown by f; records a failure if none is.
template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an evoxplain::Error";
  return ErrorKind::Numeric;
}

// Map from rows of single-character labels ('0'..'9', 'a'..'z').
inline SuperpixelMap map_from_rows(const std::vector<std::string>& rows) {
  const std::size_t w = rows.front().size();
  std::vector<SuperpixelMap::Label> labels;
  SuperpixelMap::Label top = 0;
  for (const auto& row : rows) {
    for (char ch : row) {
      const int v = ch <= '9' ? ch - '0' : ch - 'a' + 10;
      labels.push_back(v);
      top = std::max(top, v);
    }
  }
  return SuperpixelMap(w, rows.size(), std::move(labels), static_cast<std::size_t>(top) + 1);
}

// Vertical stripes of equal width, one per superpixel.
inline SuperpixelMap stripe_map(std::size_t width, std::size_t height, std::size_t ns) {
  std::vector<SuperpixelMap::Label> labels(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      labels[y * width + x] = static_cast<SuperpixelMap::Label>(x * ns / width);
    }
  }
  return SuperpixelMap(width, height, std::move(labels), ns);
}

// Deterministic non-black pixels.
inline RasterImage pattern_image(std::size_t width, std::size_t height) {
  std::vector<Rgb> px(width * height);
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = Rgb{static_cast<std::uint8_t>(40 + (i * 37) % 200), static_cast<std::uint8_t>(40 + (i * 11) % 190),
                static_cast<std::uint8_t>(40 + (i * 101) % 180)};
  }
  return RasterImage(width, height, std::move(px));
}

// Wraps another classifier and counts predict() calls.
class CountingClassifier final : public Classifier {
 public:
  explicit CountingClassifier(const Classifier& inner) : inner_(inner) {}

  ProbDist predict(const RasterImage& image) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.predict(image);
  }
  std::size_t num_classes() const override { return inner_.num_classes(); }

  std::size_t calls() const { return calls_.load(); }
  void reset() { calls_ = 0; }

 private:
  const Classifier& inner_;
  mutable std::atomic<std::size_t> calls_{0};
};

}  // namespace evoxplain::test
