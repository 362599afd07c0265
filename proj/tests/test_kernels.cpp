#include "avor3/error.hpp"
#include "avor3/kernels.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace avor3::kernels;

namespace {

struct Batch {
  std::array<std::vector<std::int32_t>, 9> cols;
  MatrixBatch view() const {
    MatrixBatch b;
    for (int k = 0; k < 9; ++k) b.entry[k] = cols[k];
    return b;
  }
};

Batch random_batch(std::mt19937& rng, std::size_t n, std::int32_t bound) {
  std::uniform_int_distribution<std::int32_t> d(-bound, bound);
  Batch b;
  for (auto& c : b.cols) {
    c.resize(n);
    for (auto& x : c) x = d(rng);
  }
  return b;
}

std::int64_t det64(const Batch& b, std::size_t i) {
  auto e = [&](int k) { return static_cast<std::int64_t>(b.cols[k][i]); };
  return e(0) * (e(4) * e(8) - e(5) * e(7)) - e(1) * (e(3) * e(8) - e(5) * e(6)) + e(2) * (e(3) * e(7) - e(4) * e(6));
}

}  // namespace

TEST(Kernels, ScalarMatchesWideOracle) {
  std::mt19937 rng(11);
  for (std::int32_t bound : {1, 3, 50, kMaxEntry}) {
    const auto b = random_batch(rng, 257, bound);
    std::vector<std::int32_t> out(257);
    det3_scalar(b.view(), out);
    for (std::size_t i = 0; i < out.size(); ++i) ASSERT_EQ(out[i], det64(b, i)) << "bound " << bound;
  }
}

TEST(Kernels, ExtremeEntriesFitInInt32) {
  Batch b;
  // det of [[M,-M,M],[M,M,-M],[-M,M,M]] is 4 M^3, the largest magnitude in the range
  const std::int32_t m = kMaxEntry;
  const std::int32_t vals[9] = {m, -m, m, m, m, -m, -m, m, m};
  for (int k = 0; k < 9; ++k) b.cols[k] = {vals[k]};
  std::vector<std::int32_t> out(1);
  det3_scalar(b.view(), out);
  EXPECT_EQ(out[0], det64(b, 0));
}

TEST(Kernels, Avx2MatchesScalarAllLengths) {
  if (!cpu_supports(Isa::Avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937 rng(12);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 343u, 1000u}) {
    const auto b = random_batch(rng, n, kMaxEntry);
    std::vector<std::int32_t> s(n), v(n);
    det3_scalar(b.view(), s);
    det3_avx2(b.view(), v);
    EXPECT_EQ(s, v) << "n = " << n;
  }
}

TEST(Kernels, Avx2MatchesScalarSmallEntries) {
  if (!cpu_supports(Isa::Avx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937 rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const auto b = random_batch(rng, 125, 2);
    std::vector<std::int32_t> s(125), v(125);
    det3_scalar(b.view(), s);
    det3_avx2(b.view(), v);
    ASSERT_EQ(s, v);
  }
}

TEST(Kernels, DispatchFollowsActiveIsa) {
  const Isa saved = active_isa();
  std::mt19937 rng(14);
  const auto b = random_batch(rng, 100, 20);
  std::vector<std::int32_t> want(100), got(100);
  det3_scalar(b.view(), want);
  for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
    if (!cpu_supports(isa)) {
      EXPECT_THROW(set_active_isa(isa), avor3::Error);
      continue;
    }
    set_active_isa(isa);
    EXPECT_EQ(active_isa(), isa);
    det3(b.view(), got);
    EXPECT_EQ(got, want) << isa_name(isa);
  }
  set_active_isa(saved);
}

TEST(Kernels, OutputTooSmallRejected) {
  std::mt19937 rng(15);
  const auto b = random_batch(rng, 10, 5);
  std::vector<std::int32_t> out(5);
  EXPECT_THROW(det3(b.view(), out), avor3::Error);
}
