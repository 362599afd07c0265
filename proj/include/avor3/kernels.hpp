#pragma once

// Batched integer 3x3 determinants used by the bounded GL(3,Z) search.
// A scalar reference kernel and an AVX2 kernel compute identical results;
// the dispatcher picks AVX2 when the CPU reports it.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace avor3::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// Structure-of-arrays batch: entry[k][i] is entry k (row-major, 0..8) of matrix i.
struct MatrixBatch {
  std::array<std::span<const std::int32_t>, 9> entry;
  std::size_t size() const { return entry[0].size(); }
};

// With |x| <= kMaxEntry every partial sum is bounded by 6 * 700^3 < 2^31.
inline constexpr std::int32_t kMaxEntry = 700;

void det3_scalar(const MatrixBatch& batch, std::span<std::int32_t> out);
void det3_avx2(const MatrixBatch& batch, std::span<std::int32_t> out);

bool cpu_supports(Isa isa);

// Current dispatch target. Defaults to the best supported ISA unless the
// AVOR3_FORCE_SCALAR environment variable is set.
Isa active_isa();
// Throws InvalidInput if the ISA is not supported on this CPU.
void set_active_isa(Isa isa);

void det3(const MatrixBatch& batch, std::span<std::int32_t> out);

}  // namespace avor3::kernels
