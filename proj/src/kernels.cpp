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

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace sqp::kernels {

namespace {

bool overlaps(const void* a, std::size_t a_bytes, const void* b, std::size_t b_bytes) {
  if (a_bytes == 0 || b_bytes == 0) return false;
  const auto pa = reinterpret_cast<std::uintptr_t>(a);
  const auto pb = reinterpret_cast<std::uintptr_t>(b);
  return pa < pb + b_bytes && pb < pa + a_bytes;
}

template <std::floating_point T, class Alt>
void run_range(const Alt& alt, KernelMode mode, const T* in, T* out, T* der, std::size_t begin,
               std::size_t end) {
  using Ops = ScalarOps<T>;
  const Alt a = alt;  // local copy lets the parameters live in registers
  switch (mode) {
    case KernelMode::Value:
      for (std::size_t i = begin; i < end; ++i) out[i] = Ops::value(a, in[i]);
      break;
    case KernelMode::Derivative:
      for (std::size_t i = begin; i < end; ++i) out[i] = Ops::d1(a, in[i]);
      break;
    case KernelMode::Fused:
      for (std::size_t i = begin; i < end; ++i) {
        const T x = in[i];
        out[i] = Ops::value(a, x);
        der[i] = Ops::d1(a, x);
      }
      break;
  }
}

unsigned worker_count(const ExecPolicy& policy, std::size_t n) {
  if (!policy.parallel || n < std::max<std::size_t>(policy.min_parallel_size, 2)) return 1;
  unsigned w = policy.workers ? policy.workers : std::thread::hardware_concurrency();
  w = std::max(w, 1u);
  return static_cast<unsigned>(std::min<std::size_t>(w, n));
}

template <std::floating_point T>
void validate(KernelMode mode, std::span<const T> input, std::span<T> output,
              std::span<T> derivative) {
  if (input.size() != output.size()) {
    throw UsageError("apply: input has " + std::to_string(input.size()) +
                     " elements, output has " + std::to_string(output.size()));
  }
  const std::size_t bytes = input.size_bytes();
  if (input.data() != output.data() && overlaps(input.data(), bytes, output.data(), bytes)) {
    throw UsageError("apply: input and output partially overlap");
  }
  if (mode == KernelMode::Fused) {
    if (derivative.size() != input.size()) {
      throw UsageError("apply: fused mode needs a derivative buffer of " +
                       std::to_string(input.size()) + " elements, got " +
                       std::to_string(derivative.size()));
    }
    if (overlaps(derivative.data(), bytes, input.data(), bytes) ||
        overlaps(derivative.data(), bytes, output.data(), bytes)) {
      throw UsageError("apply: derivative buffer aliases input or output");
    }
  } else if (!derivative.empty()) {
    throw UsageError("apply: derivative buffer is only used in fused mode");
  }
}

}  // namespace

template <std::floating_point T>
void apply(const Activation& act, KernelMode mode, std::span<const T> input, std::span<T> output,
           std::span<T> derivative, const ExecPolicy& policy) {
  validate(mode, input, output, derivative);
  const std::size_t n = input.size();
  if (n == 0) return;

  const T* in = input.data();
  T* out = output.data();
  T* der = derivative.data();
  const unsigned workers = worker_count(policy, n);

  act.visit([&](const auto& alt) {
    if (workers == 1) {
      run_range<T>(alt, mode, in, out, der, 0, n);
      return;
    }
    // Disjoint contiguous slices; the calling thread takes the first one.
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      if (begin == end) break;
      pool.emplace_back([&alt, mode, in, out, der, begin, end] {
        run_range<T>(alt, mode, in, out, der, begin, end);
      });
    }
    run_range<T>(alt, mode, in, out, der, 0, std::min(n, chunk));
  });
}

template <std::floating_point T>
void apply_in_place(const Activation& act, std::span<T> buffer, const ExecPolicy& policy) {
  apply<T>(act, KernelMode::Value, std::span<const T>(buffer), buffer, {}, policy);
}

template <std::floating_point T>
double checksum(std::span<const T> buffer) noexcept {
  T sum = T(0);
  for (const T v : buffer) sum += v;
  return static_cast<double>(sum);
}

template void apply<float>(const Activation&, KernelMode, std::span<const float>, std::span<float>,
                           std::span<float>, const ExecPolicy&);
template void apply<double>(const Activation&, KernelMode, std::span<const double>,
                            std::span<double>, std::span<double>, const ExecPolicy&);
template void apply_in_place<float>(const Activation&, std::span<float>, const ExecPolicy&);
template void apply_in_place<double>(const Activation&, std::span<double>, const ExecPolicy&);
template double checksum<float>(std::span<const float>) noexcept;
template double checksum<double>(std::span<const double>) noexcept;

}  // namespace sqp::kernels
