// Copyright 2026 The Squareplus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sqp/kernels.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <vector>

namespace sqp::kernels {
namespace {

template <class T>
bool bit_identical(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

template <class T>
std::vector<T> random_buffer(std::size_t n, std::uint64_t seed, double lo = -30, double hi = 30) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(dist(rng));
  return v;
}

std::vector<Activation> all_activations() {
  auto acts = table_activations();
  acts.push_back(Squareplus{0.0});
  acts.push_back(Squareplus{kBSoftplusMatch});
  acts.push_back(Elu{0.3});
  return acts;
}

TEST(Apply, SquareplusExample) {
  const std::vector<double> in = {0.0, 1.0, -3.0};
  std::vector<double> out(3);
  apply<double>(Squareplus{4.0}, KernelMode::Value, in, out);
  EXPECT_EQ(out[0], 1.0);
  EXPECT_DOUBLE_EQ(out[1], 1.6180339887498948);
  EXPECT_DOUBLE_EQ(out[2], 0.30277563773199465);
}

TEST(Apply, EmptyBuffer) {
  std::vector<double> in, out;
  EXPECT_NO_THROW(apply<double>(Relu{}, KernelMode::Value, in, out));
  EXPECT_TRUE(out.empty());
}

TEST(Apply, ZeroBIsRelu) {
  std::vector<double> grid(2001);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -20.0 + 0.02 * static_cast<double>(i);
  std::vector<double> sp(grid.size()), r(grid.size());
  apply<double>(Squareplus{0.0}, KernelMode::Value, grid, sp);
  apply<double>(Relu{}, KernelMode::Value, grid, r);
  for (std::size_t i = 0; i < grid.size(); ++i) ASSERT_EQ(sp[i], r[i]) << grid[i];
}

TEST(Apply, LengthMismatchAndAliasingAreRejected) {
  std::vector<double> in(4, 1.0), out(3), der(4);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Value, in, out), UsageError);
  std::vector<double> out4(4), der3(3);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Fused, in, out4, der3), UsageError);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Fused, in, out4), UsageError);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Value, in, out4, der), UsageError);

  std::vector<double> buf(8, 1.0);
  std::span<const double> head(buf.data(), 4);
  std::span<double> shifted(buf.data() + 2, 4);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Value, head, shifted), UsageError);
  std::span<double> same(buf.data(), 4);
  EXPECT_THROW(apply<double>(Relu{}, KernelMode::Fused, head, out4, same), UsageError);
}

TEST(Apply, MatchesScalarLoopBitForBit) {
  const auto in = random_buffer<double>(10007, 1);
  const auto inf = random_buffer<float>(10007, 2);
  for (const Activation& act : all_activations()) {
    std::vector<double> out(in.size()), ref(in.size());
    apply<double>(act, KernelMode::Value, in, out);
    for (std::size_t i = 0; i < in.size(); ++i) ref[i] = act.value(in[i]);
    EXPECT_TRUE(bit_identical(out, ref)) << act.name();

    apply<double>(act, KernelMode::Derivative, in, out);
    for (std::size_t i = 0; i < in.size(); ++i) ref[i] = act.d1(in[i]);
    EXPECT_TRUE(bit_identical(out, ref)) << act.name() << " d1";

    std::vector<float> outf(inf.size()), reff(inf.size());
    apply<float>(act, KernelMode::Value, inf, outf);
    for (std::size_t i = 0; i < inf.size(); ++i) reff[i] = act.value(inf[i]);
    EXPECT_TRUE(bit_identical(outf, reff)) << act.name() << " single";
  }
}

TEST(Apply, FusedEqualsSeparateModes) {
  const auto in = random_buffer<double>(5000, 3);
  for (const Activation& act : all_activations()) {
    std::vector<double> v(in.size()), d(in.size()), fv(in.size()), fd(in.size());
    apply<double>(act, KernelMode::Value, in, v);
    apply<double>(act, KernelMode::Derivative, in, d);
    apply<double>(act, KernelMode::Fused, in, fv, fd);
    EXPECT_TRUE(bit_identical(v, fv)) << act.name();
    EXPECT_TRUE(bit_identical(d, fd)) << act.name();
  }
}

TEST(Apply, ParallelIsBitIdenticalToSequential) {
  const auto in = random_buffer<double>(1'000'000, 4);
  ExecPolicy par;
  par.parallel = true;
  par.workers = 7;  // uneven split on purpose
  for (const Activation& act : all_activations()) {
    for (KernelMode mode : {KernelMode::Value, KernelMode::Derivative}) {
      std::vector<double> seq(in.size()), out(in.size());
      apply<double>(act, mode, in, seq);
      apply<double>(act, mode, in, out, {}, par);
      EXPECT_TRUE(bit_identical(seq, out)) << act.name();
    }
    std::vector<double> v(in.size()), d(in.size()), pv(in.size()), pd(in.size());
    apply<double>(act, KernelMode::Fused, in, v, d);
    apply<double>(act, KernelMode::Fused, in, pv, pd, par);
    EXPECT_TRUE(bit_identical(v, pv) && bit_identical(d, pd)) << act.name();
  }
}

TEST(Apply, ParallelThresholdAndTinyBuffers) {
  ExecPolicy par;
  par.parallel = true;
  par.workers = 16;
  par.min_parallel_size = 1;
  for (std::size_t n : {1u, 2u, 3u, 15u, 17u, 100u}) {
    const auto in = random_buffer<float>(n, n);
    std::vector<float> seq(n), out(n);
    apply<float>(Squareplus{4.0}, KernelMode::Value, in, seq);
    apply<float>(Squareplus{4.0}, KernelMode::Value, in, out, {}, par);
    EXPECT_TRUE(bit_identical(seq, out)) << n;
  }
}

TEST(ApplyInPlace, MatchesOutOfPlace) {
  for (const Activation& act : all_activations()) {
    std::vector<double> small = {0.0, 1.0, -3.0};
    std::vector<double> expect(3);
    apply<double>(act, KernelMode::Value, small, expect);
    apply_in_place<double>(act, small);
    EXPECT_TRUE(bit_identical(small, expect)) << act.name();
  }
  auto big = random_buffer<double>(1'000'000, 5);
  std::vector<double> expect(big.size());
  apply<double>(Squareplus{4.0}, KernelMode::Value, big, expect);
  ExecPolicy par;
  par.parallel = true;
  par.workers = 4;
  apply_in_place<double>(Squareplus{4.0}, big, par);
  EXPECT_TRUE(bit_identical(big, expect));

  std::vector<double> empty;
  EXPECT_NO_THROW(apply_in_place<double>(Relu{}, empty));
}

TEST(Apply, ReluIsIdempotent) {
  auto buf = random_buffer<double>(4096, 6);
  apply_in_place<double>(Relu{}, buf);
  const auto once = buf;
  apply_in_place<double>(Relu{}, buf);
  EXPECT_TRUE(bit_identical(once, buf));
}

TEST(Checksum, Examples) {
  EXPECT_EQ(checksum<double>(std::vector<double>{}), 0.0);
  EXPECT_EQ(checksum<double>(std::vector<double>{1, 2, 3}), 6.0);
  std::vector<double> v = {-1, 2, -3, 4};
  apply_in_place<double>(Relu{}, v);
  EXPECT_EQ(checksum<double>(v), 6.0);
}

TEST(Checksum, AccumulatesInBufferPrecision) {
  // 2^24 + 1 is not a float: the float fold drops the trailing ones.
  std::vector<float> v = {16777216.0f, 1.0f, 1.0f};
  EXPECT_EQ(checksum<float>(v), 16777216.0);
  std::vector<double> d = {16777216.0, 1.0, 1.0};
  EXPECT_EQ(checksum<double>(d), 16777218.0);
}

}  // namespace
}  // namespace sqp::kernels
