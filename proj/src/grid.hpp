#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace bcs::detail {

// Visits the nodes 2 pi i / n of the periodic tensor grid [0, 2 pi)^d.
template <class Fn>
void for_each_grid_point(int d, std::size_t n, Fn&& fn) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<std::size_t> index(static_cast<std::size_t>(d), 0);
  std::vector<double> kappa(static_cast<std::size_t>(d), 0.0);
  while (true) {
    for (std::size_t j = 0; j < index.size(); ++j) kappa[j] = step * static_cast<double>(index[j]);
    fn(std::span<const double>(kappa));
    std::size_t j = 0;
    for (; j < index.size(); ++j) {
      if (++index[j] < n) break;
      index[j] = 0;
    }
    if (j == index.size()) return;
  }
}

}  // namespace bcs::detail
