// Compiled with -mavx2; only reached through the dispatcher after a CPU check.

#include "avor3/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace avor3::kernels {

#if defined(__AVX2__)

namespace {

inline __m256i load8(std::span<const std::int32_t> s, std::size_t i) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s.data() + i));
}

inline __m256i minor2(__m256i a, __m256i b, __m256i c, __m256i d) {
  return _mm256_sub_epi32(_mm256_mullo_epi32(a, b), _mm256_mullo_epi32(c, d));
}

}  // namespace

void det3_avx2(const MatrixBatch& b, std::span<std::int32_t> out) {
  const std::size_t n = b.size();
  const auto& e = b.entry;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i m00 = load8(e[0], i), m01 = load8(e[1], i), m02 = load8(e[2], i);
    const __m256i m10 = load8(e[3], i), m11 = load8(e[4], i), m12 = load8(e[5], i);
    const __m256i m20 = load8(e[6], i), m21 = load8(e[7], i), m22 = load8(e[8], i);
    const __m256i c0 = minor2(m11, m22, m12, m21);
    const __m256i c1 = minor2(m10, m22, m12, m20);
    const __m256i c2 = minor2(m10, m21, m11, m20);
    __m256i d = _mm256_mullo_epi32(m00, c0);
    d = _mm256_sub_epi32(d, _mm256_mullo_epi32(m01, c1));
    d = _mm256_add_epi32(d, _mm256_mullo_epi32(m02, c2));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), d);
  }
  if (i < n) {
    MatrixBatch tail;
    for (int k = 0; k < 9; ++k) tail.entry[k] = e[k].subspan(i);
    det3_scalar(tail, out.subspan(i));
  }
}

#else

void det3_avx2(const MatrixBatch& b, std::span<std::int32_t> out) { det3_scalar(b, out); }

#endif

}  // namespace avor3::kernels
