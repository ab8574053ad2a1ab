#pragma once

#include <cstddef>
#include <cstdint>

namespace sanet::kernels {

// Inner-loop kernels behind the tensor ops. Every kernel has a scalar
// reference implementation; the float entry points below go through a
// runtime-dispatched table that selects an AVX2 variant when the CPU has
// one. Double always runs the scalar reference (the 64-bit path exists for
// gradient verification, not speed). Equivalence between the two float
// paths is covered in tests/test_kernels.cpp.

struct ConfusionCounts64 {
  uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

namespace ref {

template <typename T>
void add(T* dst, const T* a, const T* b, size_t n);
template <typename T>
void mul(T* dst, const T* a, const T* b, size_t n);
template <typename T>
void axpy(T* y, T a, const T* x, size_t n);
template <typename T>
void scale(T* dst, const T* src, T a, size_t n);
template <typename T>
void scale_shift(T* dst, const T* src, T a, T b, size_t n);
template <typename T>
void relu_fwd(T* dst, const T* src, size_t n);
template <typename T>
void relu_bwd(T* dx, const T* dy, const T* src, size_t n);
template <typename T>
void sigmoid_fwd(T* dst, const T* src, size_t n);
template <typename T>
double reduce_sum(const T* src, size_t n);
template <typename T>
double reduce_sqdiff(const T* src, size_t n, T mean);

// Same-padding 2D convolution over planar (c, h, w) data. Weights are laid
// out [c_out][c_in][k][k], output dims are ceil(h / stride) for even h.
template <typename T>
void conv2d(const T* src, int c_in, int h, int w, const T* wts, const T* bias, int c_out, int k,
            int stride, T* dst);

ConfusionCounts64 confusion_u8(const uint8_t* pred, const uint8_t* gt, size_t n);

}  // namespace ref

// Dispatched float entry points.
void add_f32(float* dst, const float* a, const float* b, size_t n);
void mul_f32(float* dst, const float* a, const float* b, size_t n);
void axpy_f32(float* y, float a, const float* x, size_t n);
void scale_f32(float* dst, const float* src, float a, size_t n);
void scale_shift_f32(float* dst, const float* src, float a, float b, size_t n);
void relu_fwd_f32(float* dst, const float* src, size_t n);
void relu_bwd_f32(float* dx, const float* dy, const float* src, size_t n);
void sigmoid_fwd_f32(float* dst, const float* src, size_t n);
double reduce_sum_f32(const float* src, size_t n);
double reduce_sqdiff_f32(const float* src, size_t n, float mean);
void conv2d_f32(const float* src, int c_in, int h, int w, const float* wts, const float* bias,
                int c_out, int k, int stride, float* dst);
ConfusionCounts64 confusion_u8(const uint8_t* pred, const uint8_t* gt, size_t n);

enum class Impl { scalar, avx2 };

bool avx2_available();
// Active implementation; resolved once from CPU features and the
// SANET_KERNELS env var (values: "scalar", "avx2").
Impl active_impl();
const char* impl_name();
// Testing hook. Throws if the requested implementation is unavailable.
void force_impl(Impl impl);

// Typed shims so templated layer code routes float through the dispatch
// table and double through the reference path.
template <typename T>
inline void add(T* dst, const T* a, const T* b, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    add_f32(dst, a, b, n);
  else
    ref::add(dst, a, b, n);
}
template <typename T>
inline void mul(T* dst, const T* a, const T* b, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    mul_f32(dst, a, b, n);
  else
    ref::mul(dst, a, b, n);
}
template <typename T>
inline void axpy(T* y, T a, const T* x, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    axpy_f32(y, a, x, n);
  else
    ref::axpy(y, a, x, n);
}
template <typename T>
inline void scale(T* dst, const T* src, T a, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    scale_f32(dst, src, a, n);
  else
    ref::scale(dst, src, a, n);
}
template <typename T>
inline void scale_shift(T* dst, const T* src, T a, T b, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    scale_shift_f32(dst, src, a, b, n);
  else
    ref::scale_shift(dst, src, a, b, n);
}
template <typename T>
inline void relu_fwd(T* dst, const T* src, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    relu_fwd_f32(dst, src, n);
  else
    ref::relu_fwd(dst, src, n);
}
template <typename T>
inline void relu_bwd(T* dx, const T* dy, const T* src, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    relu_bwd_f32(dx, dy, src, n);
  else
    ref::relu_bwd(dx, dy, src, n);
}
template <typename T>
inline void sigmoid_fwd(T* dst, const T* src, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    sigmoid_fwd_f32(dst, src, n);
  else
    ref::sigmoid_fwd(dst, src, n);
}
template <typename T>
inline double reduce_sum(const T* src, size_t n) {
  if constexpr (std::is_same_v<T, float>)
    return reduce_sum_f32(src, n);
  else
    return ref::reduce_sum(src, n);
}
template <typename T>
inline double reduce_sqdiff(const T* src, size_t n, T mean) {
  if constexpr (std::is_same_v<T, float>)
    return reduce_sqdiff_f32(src, n, mean);
  else
    return ref::reduce_sqdiff(src, n, mean);
}
template <typename T>
inline void conv2d(const T* src, int c_in, int h, int w, const T* wts, const T* bias, int c_out,
                   int k, int stride, T* dst) {
  if constexpr (std::is_same_v<T, float>)
    conv2d_f32(src, c_in, h, w, wts, bias, c_out, k, stride, dst);
  else
    ref::conv2d(src, c_in, h, w, wts, bias, c_out, k, stride, dst);
}

}  // namespace sanet::kernels
