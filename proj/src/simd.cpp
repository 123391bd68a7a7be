#include "cue3d/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace cue3d::simd {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && avx2_kernels.nn_scan != nullptr;
#else
  return false;
#endif
}

namespace {

struct selection {
  const kernels* table;
  const char* name;
};

selection select() {
  const char* force = std::getenv("CUE3D_SIMD");
  if (force && std::strcmp(force, "scalar") == 0) return {&scalar_kernels, "scalar"};
  if (force && std::strcmp(force, "avx2") == 0 && avx2_available())
    return {&avx2_kernels, "avx2"};
  if (avx2_available()) return {&avx2_kernels, "avx2"};
  return {&scalar_kernels, "scalar"};
}

const selection& selected() {
  static selection s = select();
  return s;
}

}  // namespace

const kernels& active() { return *selected().table; }
const char* active_name() { return selected().name; }

}  // namespace cue3d::simd
