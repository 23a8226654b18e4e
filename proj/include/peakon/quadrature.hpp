#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace peakon::quad {

/// Five-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 5> kGL5Nodes = {
    -0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104,
    0.90617984593866399280};
inline constexpr std::array<double, 5> kGL5Weights = {
    0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
    0.47862867049936646804, 0.23692688505618908751};

/// Calls fn(x, w) for every node of composite GL5 over [a, b] split into
/// `panels` equal pieces.
template <typename Fn>
void gl5_panels(double a, double b, std::size_t panels, Fn&& fn) {
  if (!(b > a) || panels == 0) return;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double mid = lo + 0.5 * h;
    for (std::size_t q = 0; q < 5; ++q) fn(mid + 0.5 * h * kGL5Nodes[q], 0.5 * h * kGL5Weights[q]);
  }
}

/// Sorted breakpoints covering [a, b]: the endpoints, every cut strictly
/// inside, then each piece subdivided so no panel exceeds `max_width`.
inline std::vector<double> split_panels(double a, double b, const std::vector<double>& cuts,
                                        double max_width) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double c : cuts) {
    if (c > a && c < b) inner.push_back(c);
  }
  std::sort(inner.begin(), inner.end());
  inner.push_back(b);
  for (double c : inner) {
    const double lo = pts.back();
    if (!(c > lo)) continue;
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((c - lo) / max_width)));
    const double h = (c - lo) / static_cast<double>(pieces);
    for (std::size_t k = 1; k < pieces; ++k) pts.push_back(lo + h * static_cast<double>(k));
    pts.push_back(c);
  }
  return pts;
}

}  // namespace peakon::quad
