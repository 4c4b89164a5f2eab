#include "mkit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mkit::kernels {

namespace {

constexpr Ops kScalar{scalar::dot, scalar::sum, scalar::sumsq,
                      scalar::axpy, scalar::scale, scalar::matvec};
constexpr Ops kAvx2{avx2::dot, avx2::sum, avx2::sumsq,
                    avx2::axpy, avx2::scale, avx2::matvec};

struct Selection {
  const Ops* ops;
  const char* name;
};

Selection select() {
  const char* env = std::getenv("MKIT_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return {&kScalar, "scalar"};
    if (std::strcmp(env, "avx2") == 0 && avx2::available()) return {&kAvx2, "avx2"};
    return {&kScalar, "scalar"};
  }
  if (avx2::available()) return {&kAvx2, "avx2"};
  return {&kScalar, "scalar"};
}

const Selection& cached() {
  static const Selection sel = select();
  return sel;
}

}  // namespace

const Ops& active() { return *cached().ops; }
std::string_view active_name() { return cached().name; }

}  // namespace mkit::kernels
