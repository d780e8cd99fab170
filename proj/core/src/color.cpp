#include "evoxplain/color.hpp"

#include <array>
#include <cmath>

namespace evoxplain {
namespace {

constexpr double kM[3][3] = {{0.412453, 0.357580, 0.180423},
                             {0.212671, 0.715160, 0.072169},
                             {0.019334, 0.119193, 0.950227}};
constexpr double kWhite[3] = {kM[0][0] + kM[0][1] + kM[0][2],
                              kM[1][0] + kM[1][1] + kM[1][2],
                              kM[2][0] + kM[2][1] + kM[2][2]};

const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  constexpr double eps = delta * delta * delta;
  return t > eps ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

Lab srgb_to_lab(Rgb rgb) noexcept {
  const auto& lin = linear_table();
  const double r = lin[rgb.r];
  const double g = lin[rgb.g];
  const double b = lin[rgb.b];
  const double fx = lab_f((kM[0][0] * r + kM[0][1] * g + kM[0][2] * b) / kWhite[0]);
  const double fy = lab_f((kM[1][0] * r + kM[1][1] * g + kM[1][2] * b) / kWhite[1]);
  const double fz = lab_f((kM[2][0] * r + kM[2][1] * g + kM[2][2] * b) / kWhite[2]);
  return Lab{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage rgb_to_lab(const RasterImage& image) {
  LabImage out;
  out.width = image.width();
  out.height = image.height();
  out.pixels.reserve(image.pixel_count());
  for (const Rgb& p : image.pixels()) out.pixels.push_back(srgb_to_lab(p));
  return out;
}

}  // namespace evoxplain
