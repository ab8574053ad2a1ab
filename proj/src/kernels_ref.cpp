#include <cmath>
#include <type_traits>

#include "sanet/kernels.hpp"

namespace sanet::kernels::ref {

template <typename T>
void add(T* dst, const T* a, const T* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

template <typename T>
void mul(T* dst, const T* a, const T* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

template <typename T>
void axpy(T* y, T a, const T* x, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename T>
void scale(T* dst, const T* src, T a, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a * src[i];
}

template <typename T>
void scale_shift(T* dst, const T* src, T a, T b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a * src[i] + b;
}

template <typename T>
void relu_fwd(T* dst, const T* src, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = src[i] > T(0) ? src[i] : T(0);
}

template <typename T>
void relu_bwd(T* dx, const T* dy, const T* src, size_t n) {
  for (size_t i = 0; i < n; ++i) dx[i] = src[i] > T(0) ? dy[i] : T(0);
}

template <typename T>
void sigmoid_fwd(T* dst, const T* src, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    double z = static_cast<double>(src[i]);
    double s;
    if (z >= 0.0) {
      s = 1.0 / (1.0 + std::exp(-z));
    } else {
      double e = std::exp(z);
      s = e / (1.0 + e);
    }
    dst[i] = static_cast<T>(s);
  }
}

template <typename T>
double reduce_sum(const T* src, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += static_cast<double>(src[i]);
  return acc;
}

template <typename T>
double reduce_sqdiff(const T* src, size_t n, T mean) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = static_cast<double>(src[i]) - static_cast<double>(mean);
    acc += d * d;
  }
  return acc;
}

template <typename T>
void conv2d(const T* src, int c_in, int h, int w, const T* wts, const T* bias, int c_out, int k,
            int stride, T* dst) {
  const int pad = k / 2;
  const int oh = (h + stride - 1) / stride;
  const int ow = (w + stride - 1) / stride;
  const size_t in_plane = static_cast<size_t>(h) * w;
  const size_t out_plane = static_cast<size_t>(oh) * ow;
  for (int oc = 0; oc < c_out; ++oc) {
    T* out = dst + oc * out_plane;
    const T b = bias ? bias[oc] : T(0);
    for (size_t i = 0; i < out_plane; ++i) out[i] = b;
    for (int ic = 0; ic < c_in; ++ic) {
      const T* in = src + ic * in_plane;
      const T* wk = wts + (static_cast<size_t>(oc) * c_in + ic) * k * k;
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          T acc = T(0);
          for (int ky = 0; ky < k; ++ky) {
            const int iy = oy * stride + ky - pad;
            if (iy < 0 || iy >= h) continue;
            for (int kx = 0; kx < k; ++kx) {
              const int ix = ox * stride + kx - pad;
              if (ix < 0 || ix >= w) continue;
              acc += wk[ky * k + kx] * in[static_cast<size_t>(iy) * w + ix];
            }
          }
          out[static_cast<size_t>(oy) * ow + ox] += acc;
        }
      }
    }
  }
}

ConfusionCounts64 confusion_u8(const uint8_t* pred, const uint8_t* gt, size_t n) {
  ConfusionCounts64 c;
  for (size_t i = 0; i < n; ++i) {
    if (pred[i] && gt[i])
      ++c.tp;
    else if (pred[i] && !gt[i])
      ++c.fp;
    else if (!pred[i] && gt[i])
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

template void add(float*, const float*, const float*, size_t);
template void add(double*, const double*, const double*, size_t);
template void mul(float*, const float*, const float*, size_t);
template void mul(double*, const double*, const double*, size_t);
template void axpy(float*, float, const float*, size_t);
template void axpy(double*, double, const double*, size_t);
template void scale(float*, const float*, float, size_t);
template void scale(double*, const double*, double, size_t);
template void scale_shift(float*, const float*, float, float, size_t);
template void scale_shift(double*, const double*, double, double, size_t);
template void relu_fwd(float*, const float*, size_t);
template void relu_fwd(double*, const double*, size_t);
template void relu_bwd(float*, const float*, const float*, size_t);
template void relu_bwd(double*, const double*, const double*, size_t);
template void sigmoid_fwd(float*, const float*, size_t);
template void sigmoid_fwd(double*, const double*, size_t);
template double reduce_sum(const float*, size_t);
template double reduce_sum(const double*, size_t);
template double reduce_sqdiff(const float*, size_t, float);
template double reduce_sqdiff(const double*, size_t, double);
template void conv2d(const float*, int, int, int, const float*, const float*, int, int, int,
                     float*);
template void conv2d(const double*, int, int, int, const double*, const double*, int, int, int,
                     double*);

}  // namespace sanet::kernels::ref
