#include <atomic>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "sanet/errors.hpp"
#include "sanet/kernels.hpp"

namespace sanet::kernels {

#if defined(SANET_HAVE_AVX2_TU)
namespace avx2 {
void add(float*, const float*, const float*, size_t);
void mul(float*, const float*, const float*, size_t);
void axpy(float*, float, const float*, size_t);
void scale(float*, const float*, float, size_t);
void scale_shift(float*, const float*, float, float, size_t);
void relu_fwd(float*, const float*, size_t);
void relu_bwd(float*, const float*, const float*, size_t);
double reduce_sum(const float*, size_t);
double reduce_sqdiff(const float*, size_t, float);
void conv2d(const float*, int, int, int, const float*, const float*, int, int, int, float*);
ConfusionCounts64 confusion_u8(const uint8_t*, const uint8_t*, size_t);
}  // namespace avx2
#endif

bool avx2_available() {
#if defined(SANET_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

std::atomic<Impl> g_impl{Impl::scalar};
std::once_flag g_once;

Impl resolve_default() {
  if (const char* env = std::getenv("SANET_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Impl::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!avx2_available()) throw ConfigError("SANET_KERNELS=avx2 but AVX2 is unavailable");
      return Impl::avx2;
    }
    throw ConfigError(std::string("unknown SANET_KERNELS value: ") + env);
  }
  return avx2_available() ? Impl::avx2 : Impl::scalar;
}

void ensure_resolved() {
  std::call_once(g_once, [] { g_impl.store(resolve_default()); });
}

}  // namespace

Impl active_impl() {
  ensure_resolved();
  return g_impl.load();
}

const char* impl_name() { return active_impl() == Impl::avx2 ? "avx2" : "scalar"; }

void force_impl(Impl impl) {
  ensure_resolved();
  if (impl == Impl::avx2 && !avx2_available())
    throw ConfigError("cannot force avx2 kernels: unavailable on this CPU/build");
  g_impl.store(impl);
}

#if defined(SANET_HAVE_AVX2_TU)
#define SANET_DISPATCH(fn, ...) \
  if (active_impl() == Impl::avx2) return avx2::fn(__VA_ARGS__); \
  return ref::fn(__VA_ARGS__)
#else
#define SANET_DISPATCH(fn, ...) return ref::fn(__VA_ARGS__)
#endif

void add_f32(float* dst, const float* a, const float* b, size_t n) {
  SANET_DISPATCH(add, dst, a, b, n);
}
void mul_f32(float* dst, const float* a, const float* b, size_t n) {
  SANET_DISPATCH(mul, dst, a, b, n);
}
void axpy_f32(float* y, float a, const float* x, size_t n) { SANET_DISPATCH(axpy, y, a, x, n); }
void scale_f32(float* dst, const float* src, float a, size_t n) {
  SANET_DISPATCH(scale, dst, src, a, n);
}
void scale_shift_f32(float* dst, const float* src, float a, float b, size_t n) {
  SANET_DISPATCH(scale_shift, dst, src, a, b, n);
}
void relu_fwd_f32(float* dst, const float* src, size_t n) { SANET_DISPATCH(relu_fwd, dst, src, n); }
void relu_bwd_f32(float* dx, const float* dy, const float* src, size_t n) {
  SANET_DISPATCH(relu_bwd, dx, dy, src, n);
}
void sigmoid_fwd_f32(float* dst, const float* src, size_t n) {
  // exp stays scalar; the op is cheap relative to the convolutions.
  ref::sigmoid_fwd(dst, src, n);
}
double reduce_sum_f32(const float* src, size_t n) { SANET_DISPATCH(reduce_sum, src, n); }
double reduce_sqdiff_f32(const float* src, size_t n, float mean) {
  SANET_DISPATCH(reduce_sqdiff, src, n, mean);
}
void conv2d_f32(const float* src, int c_in, int h, int w, const float* wts, const float* bias,
                int c_out, int k, int stride, float* dst) {
  SANET_DISPATCH(conv2d, src, c_in, h, w, wts, bias, c_out, k, stride, dst);
}
ConfusionCounts64 confusion_u8(const uint8_t* pred, const uint8_t* gt, size_t n) {
  SANET_DISPATCH(confusion_u8, pred, gt, n);
}

#undef SANET_DISPATCH

}  // namespace sanet::kernels
