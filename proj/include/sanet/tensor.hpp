#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sanet/errors.hpp"

namespace sanet {

// Dense planar tensor, channels outermost: index (c, y, x) maps to
// (c * h + y) * w + x. A plane is contiguous, which is what the row-wise
// SIMD kernels want.
template <typename T>
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<T> v;

  Tensor() = default;
  Tensor(int c_, int h_, int w_, T fill = T(0))
      : c(c_), h(h_), w(w_), v(static_cast<size_t>(c_) * h_ * w_, fill) {}

  size_t size() const { return v.size(); }
  size_t plane_size() const { return static_cast<size_t>(h) * w; }

  T& at(int ci, int yi, int xi) { return v[(static_cast<size_t>(ci) * h + yi) * w + xi]; }
  const T& at(int ci, int yi, int xi) const {
    return v[(static_cast<size_t>(ci) * h + yi) * w + xi];
  }

  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  std::span<T> plane(int ci) { return {v.data() + ci * plane_size(), plane_size()}; }
  std::span<const T> plane(int ci) const { return {v.data() + ci * plane_size(), plane_size()}; }

  bool same_shape(const Tensor& o) const { return c == o.c && h == o.h && w == o.w; }

  std::string shape_str() const {
    return std::to_string(c) + "x" + std::to_string(h) + "x" + std::to_string(w);
  }

  bool all_finite() const {
    for (const T& x : v)
      if (!std::isfinite(static_cast<double>(x))) return false;
    return true;
  }

  template <typename U>
  Tensor<U> cast() const {
    Tensor<U> out(c, h, w);
    for (size_t i = 0; i < v.size(); ++i) out.v[i] = static_cast<U>(v[i]);
    return out;
  }
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;
// Binary masks are 0/1 valued byte tensors with c == 1.
using Mask = Tensor<uint8_t>;

inline void require_same_shape(const auto& a, const auto& b, const char* what) {
  if (a.c != b.c || a.h != b.h || a.w != b.w)
    throw ShapeError(std::string(what) + ": " + a.shape_str() + " vs " + b.shape_str());
}

}  // namespace sanet
