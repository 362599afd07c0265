#include "avor3/error.hpp"
#include "avor3/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace avor3::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

void det3_scalar(const MatrixBatch& b, std::span<std::int32_t> out) {
  const std::size_t n = b.size();
  const auto& e = b.entry;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t m00 = e[0][i], m01 = e[1][i], m02 = e[2][i];
    const std::int32_t m10 = e[3][i], m11 = e[4][i], m12 = e[5][i];
    const std::int32_t m20 = e[6][i], m21 = e[7][i], m22 = e[8][i];
    out[i] = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) + m02 * (m10 * m21 - m11 * m20);
  }
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa default_isa() {
  if (std::getenv("AVOR3_FORCE_SCALAR") != nullptr) return Isa::Scalar;
  return cpu_supports(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> slot{default_isa()};
  return slot;
}

}  // namespace

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!cpu_supports(isa))
    throw Error(ErrorKind::InvalidInput, std::string("ISA not supported: ") + std::string(isa_name(isa)));
  isa_slot().store(isa, std::memory_order_relaxed);
}

void det3(const MatrixBatch& batch, std::span<std::int32_t> out) {
  if (out.size() < batch.size()) throw Error(ErrorKind::InvalidInput, "det3 output too small");
  if (active_isa() == Isa::Avx2)
    det3_avx2(batch, out);
  else
    det3_scalar(batch, out);
}

}  // namespace avor3::kernels
