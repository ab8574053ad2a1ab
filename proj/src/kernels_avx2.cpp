// AVX2 kernel variants. This translation unit is compiled with
// -mavx2 -mfma and only ever entered after a runtime CPU check in the
// dispatch table, so the rest of the project keeps its baseline ISA.

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>
#include <vector>

#include "sanet/kernels.hpp"

namespace sanet::kernels::avx2 {

void add(float* dst, const float* a, const float* b, size_t n) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void mul(float* dst, const float* a, const float* b, size_t n) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void axpy(float* y, float a, const float* x, size_t n) {
  const __m256 av = _mm256_set1_ps(a);
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(float* dst, const float* src, float a, size_t n) {
  const __m256 av = _mm256_set1_ps(a);
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_mul_ps(av, _mm256_loadu_ps(src + i)));
  for (; i < n; ++i) dst[i] = a * src[i];
}

void scale_shift(float* dst, const float* src, float a, float b, size_t n) {
  const __m256 av = _mm256_set1_ps(a);
  const __m256 bv = _mm256_set1_ps(b);
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_fmadd_ps(av, _mm256_loadu_ps(src + i), bv));
  for (; i < n; ++i) dst[i] = a * src[i] + b;
}

void relu_fwd(float* dst, const float* src, size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_max_ps(_mm256_loadu_ps(src + i), zero));
  for (; i < n; ++i) dst[i] = src[i] > 0.f ? src[i] : 0.f;
}

void relu_bwd(float* dx, const float* dy, const float* src, size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 mask = _mm256_cmp_ps(_mm256_loadu_ps(src + i), zero, _CMP_GT_OQ);
    _mm256_storeu_ps(dx + i, _mm256_and_ps(mask, _mm256_loadu_ps(dy + i)));
  }
  for (; i < n; ++i) dx[i] = src[i] > 0.f ? dy[i] : 0.f;
}

static inline double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Accumulates in double lanes so the result tracks the reference within
// a few ulps even on long runs.
double reduce_sum(const float* src, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_loadu_ps(src + i);
    acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(src[i]);
  return acc;
}

double reduce_sqdiff(const float* src, size_t n, float mean) {
  const __m256d mv = _mm256_set1_pd(static_cast<double>(mean));
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_loadu_ps(src + i);
    __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(v)), mv);
    __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)), mv);
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    double d = static_cast<double>(src[i]) - static_cast<double>(mean);
    acc += d * d;
  }
  return acc;
}

// 3x3 stride-1 same-padding convolution, vectorized along x. Each input
// plane is copied once into a zero-bordered scratch so the inner loop has
// no bounds checks.
static void conv3x3_s1(const float* src, int c_in, int h, int w, const float* wts,
                       const float* bias, int c_out, float* dst) {
  const size_t plane = static_cast<size_t>(h) * w;
  const int sw = w + 2;
  std::vector<float> scratch(static_cast<size_t>(h + 2) * sw, 0.f);
  for (int oc = 0; oc < c_out; ++oc) {
    float* out = dst + oc * plane;
    const float b = bias ? bias[oc] : 0.f;
    const __m256 bv = _mm256_set1_ps(b);
    size_t i = 0;
    for (; i + 8 <= plane; i += 8) _mm256_storeu_ps(out + i, bv);
    for (; i < plane; ++i) out[i] = b;
  }
  for (int ic = 0; ic < c_in; ++ic) {
    const float* in = src + ic * plane;
    for (int y = 0; y < h; ++y) {
      float* row = scratch.data() + static_cast<size_t>(y + 1) * sw;
      for (int x = 0; x < w; ++x) row[x + 1] = in[static_cast<size_t>(y) * w + x];
    }
    for (int oc = 0; oc < c_out; ++oc) {
      float* out = dst + oc * plane;
      const float* wk = wts + (static_cast<size_t>(oc) * c_in + ic) * 9;
      for (int oy = 0; oy < h; ++oy) {
        float* orow = out + static_cast<size_t>(oy) * w;
        for (int ky = 0; ky < 3; ++ky) {
          const float* srow = scratch.data() + static_cast<size_t>(oy + ky) * sw;
          for (int kx = 0; kx < 3; ++kx) {
            const __m256 wv = _mm256_set1_ps(wk[ky * 3 + kx]);
            const float* s = srow + kx;
            int x = 0;
            for (; x + 8 <= w; x += 8)
              _mm256_storeu_ps(orow + x,
                               _mm256_fmadd_ps(wv, _mm256_loadu_ps(s + x), _mm256_loadu_ps(orow + x)));
            for (; x < w; ++x) orow[x] += wk[ky * 3 + kx] * s[x];
          }
        }
      }
    }
  }
}

static void conv1x1_s1(const float* src, int c_in, int h, int w, const float* wts,
                       const float* bias, int c_out, float* dst) {
  const size_t plane = static_cast<size_t>(h) * w;
  for (int oc = 0; oc < c_out; ++oc) {
    float* out = dst + oc * plane;
    const float b = bias ? bias[oc] : 0.f;
    const __m256 bv = _mm256_set1_ps(b);
    size_t i = 0;
    for (; i + 8 <= plane; i += 8) _mm256_storeu_ps(out + i, bv);
    for (; i < plane; ++i) out[i] = b;
    for (int ic = 0; ic < c_in; ++ic) {
      const float wv = wts[static_cast<size_t>(oc) * c_in + ic];
      axpy(out, wv, src + ic * plane, plane);
    }
  }
}

void conv2d(const float* src, int c_in, int h, int w, const float* wts, const float* bias,
            int c_out, int k, int stride, float* dst) {
  if (k == 3 && stride == 1) {
    conv3x3_s1(src, c_in, h, w, wts, bias, c_out, dst);
  } else if (k == 1 && stride == 1) {
    conv1x1_s1(src, c_in, h, w, wts, bias, c_out, dst);
  } else {
    ref::conv2d(src, c_in, h, w, wts, bias, c_out, k, stride, dst);
  }
}

static inline uint64_t hsum_epi64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  lo = _mm_add_epi64(lo, hi);
  return static_cast<uint64_t>(_mm_extract_epi64(lo, 0)) +
         static_cast<uint64_t>(_mm_extract_epi64(lo, 1));
}

// Byte masks in, exact integer tallies out. _mm256_sad_epu8 sums groups of
// eight bytes into 64-bit lanes, so counts never overflow.
ConfusionCounts64 confusion_u8(const uint8_t* pred, const uint8_t* gt, size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i tp = zero, fp = zero, fn = zero;
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pred + i));
    __m256i g = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(gt + i));
    tp = _mm256_add_epi64(tp, _mm256_sad_epu8(_mm256_and_si256(p, g), zero));
    fp = _mm256_add_epi64(fp, _mm256_sad_epu8(_mm256_andnot_si256(g, p), zero));
    fn = _mm256_add_epi64(fn, _mm256_sad_epu8(_mm256_andnot_si256(p, g), zero));
  }
  ConfusionCounts64 c;
  c.tp = hsum_epi64(tp);
  c.fp = hsum_epi64(fp);
  c.fn = hsum_epi64(fn);
  for (; i < n; ++i) {
    if (pred[i] && gt[i])
      ++c.tp;
    else if (pred[i] && !gt[i])
      ++c.fp;
    else if (!pred[i] && gt[i])
      ++c.fn;
  }
  c.tn = n - c.tp - c.fp - c.fn;
  return c;
}

}  // namespace sanet::kernels::avx2

#endif  // __AVX2__
