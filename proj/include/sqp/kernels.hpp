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


#pragma once

#include <concepts>
#include <cstddef>
#include <span>

#include "sqp/activations.hpp"

namespace sqp::kernels {

enum class KernelMode {
  Value,
  Derivative,  // first derivative
  Fused,       // value and first derivative in one pass
};

/// Buffers shorter than this always run on the calling thread.
inline constexpr std::size_t kParallelThreshold = 65536;

struct ExecPolicy {
  bool parallel = false;
  /// Worker count for the parallel path; 0 means hardware concurrency.
  unsigned workers = 0;
  std::size_t min_parallel_size = kParallelThreshold;
};

/// Elementwise map of `act` over `input`.
///
/// Value and Derivative modes write to `output` and require `derivative` to
/// be empty. Fused mode writes values to `output` and first derivatives to
/// `derivative`. Every element is the scalar result from ScalarOps, so the
/// output is bit-identical to a sequential loop however the range is split
/// across workers.
///
/// `output` may be the same buffer as `input`; any other overlap, or a length
/// mismatch, throws UsageError. No allocation happens here.
template <std::floating_point T>
void apply(const Activation& act, KernelMode mode, std::span<const T> input, std::span<T> output,
           std::span<T> derivative = {}, const ExecPolicy& policy = {});

/// Value mode, overwriting `buffer`.
template <std::floating_point T>
void apply_in_place(const Activation& act, std::span<T> buffer, const ExecPolicy& policy = {});

/// Left-to-right sum accumulated in T. Order-sensitive, hence deterministic
/// for a given buffer and precision.
template <std::floating_point T>
double checksum(std::span<const T> buffer) noexcept;

}  // namespace sqp::kernels
