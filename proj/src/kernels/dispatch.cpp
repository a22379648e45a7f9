#include <cstdlib>
#include <cstring>

#include "gcauchy/kernels.hpp"

namespace gcauchy::kernels {

const Table* avx2_table();  // kernels_avx2.cpp

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table& pick() {
  const Table* simd = avx2();
  const char* env = std::getenv("GCAUCHY_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return scalar();
  if (simd) return *simd;
  return scalar();
}

}  // namespace

const Table* avx2() {
  static const Table* t = cpu_has_avx2() ? avx2_table() : nullptr;
  return t;
}

const Table& active() {
  static const Table& t = pick();
  return t;
}

}  // namespace gcauchy::kernels
