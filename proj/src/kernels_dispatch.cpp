#include "ssg/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace ssg::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SSG_HAVE_AVX2_KERNEL)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

TransferFn detect() {
#if defined(SSG_HAVE_AVX2_KERNEL)
  if (cpu_has_avx2()) return transfer_clip_avx2;
#endif
  return transfer_clip_scalar;
}

std::atomic<TransferFn> g_active{nullptr};

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

void select(Variant v) {
  switch (v) {
    case Variant::auto_detect:
      g_active.store(detect(), std::memory_order_relaxed);
      return;
    case Variant::scalar:
      g_active.store(transfer_clip_scalar, std::memory_order_relaxed);
      return;
    case Variant::avx2:
#if defined(SSG_HAVE_AVX2_KERNEL)
      if (cpu_has_avx2()) {
        g_active.store(transfer_clip_avx2, std::memory_order_relaxed);
        return;
      }
#endif
      throw std::runtime_error("AVX2 transfer kernel is not available on this CPU");
  }
}

TransferFn active() {
  TransferFn fn = g_active.load(std::memory_order_relaxed);
  if (fn == nullptr) {
    fn = detect();
    g_active.store(fn, std::memory_order_relaxed);
  }
  return fn;
}

std::string_view active_name() {
#if defined(SSG_HAVE_AVX2_KERNEL)
  if (active() == transfer_clip_avx2) return "avx2";
#endif
  return "scalar";
}

}  // namespace ssg::kernels
