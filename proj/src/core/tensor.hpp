#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace herc {

// Dense 3-axis tensor, row-major (last axis fastest).
template <typename T>
struct Cube {
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::vector<T> data;

  Cube() = default;
  Cube(std::size_t d0, std::size_t d1, std::size_t d2)
      : dims{d0, d1, d2}, data(d0 * d1 * d2, T{}) {}

  [[nodiscard]] std::size_t size() const { return data.size(); }

  T& at(std::size_t i, std::size_t j, std::size_t k) {
    return data[(i * dims[1] + j) * dims[2] + k];
  }
  const T& at(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * dims[1] + j) * dims[2] + k];
  }

  T* row(std::size_t i, std::size_t j) { return data.data() + (i * dims[1] + j) * dims[2]; }
  const T* row(std::size_t i, std::size_t j) const {
    return data.data() + (i * dims[1] + j) * dims[2];
  }
};

}  // namespace herc
