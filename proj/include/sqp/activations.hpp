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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "sqp/errors.hpp"

namespace sqp {

/// Value of b at which squareplus(0, b) == softplus(0) == ln 2, i.e. 4 ln^2 2.
/// Also the smallest b for which squareplus bounds softplus from above.
inline constexpr double kBSoftplusMatch = 1.9218120556728056;

/// Value of b giving squareplus(0, b) == 1 and a curvature of 1/4 at the
/// origin, the same as softplus.
inline constexpr double kBUnit = 4.0;

enum class Precision { Single, Double };

std::string_view to_string(Precision p) noexcept;
/// Accepts "single"/"float"/"f32" and "double"/"f64". Throws UsageError.
Precision parse_precision(std::string_view text);

// Raw formulas. No argument validation; callers guarantee b >= 0 and
// alpha > 0. All arithmetic stays in T.
namespace unchecked {

template <std::floating_point T>
inline T squareplus(T x, T b) noexcept {
  return T(0.5) * (x + std::sqrt(x * x + b));
}

template <std::floating_point T>
inline T squareplus_d1(T x, T b) noexcept {
  if (b == T(0)) {
    // ReLU subgradient, with the midpoint at the kink.
    return x > T(0) ? T(1) : (x < T(0) ? T(0) : T(0.5));
  }
  return T(0.5) * (T(1) + x / std::sqrt(x * x + b));
}

template <std::floating_point T>
inline T squareplus_d2(T x, T b) noexcept {
  if (b == T(0)) return T(0);
  const T s = x * x + b;
  return T(0.5) * b / (s * std::sqrt(s));
}

template <std::floating_point T>
inline T softplus_stable(T x) noexcept {
  return std::max(x, T(0)) + std::log1p(std::exp(-std::abs(x)));
}

template <std::floating_point T>
inline T softplus_naive(T x) noexcept {
  return std::log(std::exp(x) + T(1));
}

/// Logistic sigmoid, the derivative of softplus.
template <std::floating_point T>
inline T sigmoid(T x) noexcept {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

/// sigmoid(x) * sigmoid(-x); avoids the cancellation in s * (1 - s).
template <std::floating_point T>
inline T softplus_d2(T x) noexcept {
  return sigmoid(x) * sigmoid(-x);
}

template <std::floating_point T>
inline T relu(T x) noexcept {
  return std::max(x, T(0));
}

template <std::floating_point T>
inline T relu_d1(T x) noexcept {
  return x > T(0) ? T(1) : (x < T(0) ? T(0) : T(0.5));
}

template <std::floating_point T>
inline T elu(T x, T alpha) noexcept {
  return x > T(0) ? x : alpha * std::expm1(x);
}

template <std::floating_point T>
inline T elu_d1(T x, T alpha) noexcept {
  return x > T(0) ? T(1) : alpha * std::exp(x);
}

template <std::floating_point T>
inline T swish(T x) noexcept {
  return x / (T(1) + std::exp(-x));
}

template <std::floating_point T>
inline T swish_d1(T x) noexcept {
  const T s = T(1) / (T(1) + std::exp(-x));
  return s + x * s * (T(1) - s);
}

}  // namespace unchecked

namespace detail {
[[noreturn]] void throw_negative_b(double b);
[[noreturn]] void throw_bad_alpha(double alpha);
}  // namespace detail

/// squareplus(x, b) = (x + sqrt(x^2 + b)) / 2.
///
/// No rescaling is done for huge inputs: once x*x overflows (|x| above
/// sqrt of the largest finite T) the result is +inf for either sign of x.
/// Throws DomainError when b < 0.
template <std::floating_point T>
T squareplus(T x, std::type_identity_t<T> b) {
  if (!(b >= T(0))) detail::throw_negative_b(static_cast<double>(b));
  return unchecked::squareplus(x, b);
}

/// First derivative, (1 + x / sqrt(x^2 + b)) / 2. Defined as 1/2 at x = b = 0.
template <std::floating_point T>
T squareplus_d1(T x, std::type_identity_t<T> b) {
  if (!(b >= T(0))) detail::throw_negative_b(static_cast<double>(b));
  return unchecked::squareplus_d1(x, b);
}

/// Second derivative, b / (2 (x^2 + b)^(3/2)). Identically 0 when b = 0;
/// the point mass of ReLU's second derivative is not representable.
template <std::floating_point T>
T squareplus_d2(T x, std::type_identity_t<T> b) {
  if (!(b >= T(0))) detail::throw_negative_b(static_cast<double>(b));
  return unchecked::squareplus_d2(x, b);
}

/// log(1 + exp(x)) as max(x, 0) + log1p(exp(-|x|)). Finite for all finite x.
template <std::floating_point T>
T softplus_stable(T x) noexcept {
  return unchecked::softplus_stable(x);
}

/// log(exp(x) + 1) with no safeguards. Overflows to +inf once exp(x) does,
/// and loses the difference to x well before that in single precision.
template <std::floating_point T>
T softplus_naive(T x) noexcept {
  return unchecked::softplus_naive(x);
}

template <std::floating_point T>
T relu(T x) noexcept {
  return unchecked::relu(x);
}

/// x for x > 0, alpha * (exp(x) - 1) otherwise. Throws DomainError if alpha <= 0.
template <std::floating_point T>
T elu(T x, std::type_identity_t<T> alpha = T(1)) {
  if (!(alpha > T(0))) detail::throw_bad_alpha(static_cast<double>(alpha));
  return unchecked::elu(x, alpha);
}

/// SiLU with a fixed beta of 1: x * sigmoid(x).
template <std::floating_point T>
T swish(T x) noexcept {
  return unchecked::swish(x);
}

/// x / sqrt(x^2 + 1).
template <std::floating_point T>
T algebraic_sigmoid(T x) noexcept {
  return x / std::sqrt(x * x + T(1));
}

/// The b that makes squareplus(x, b') match squareplus(a x, b) / a: b / a^2.
double rescale_b(double a, double b);

class Squareplus {
 public:
  explicit Squareplus(double b = kBUnit);
  double b() const noexcept { return b_; }
  friend bool operator==(const Squareplus&, const Squareplus&) = default;

 private:
  double b_;
};

struct SoftplusStable {
  friend bool operator==(const SoftplusStable&, const SoftplusStable&) = default;
};

struct SoftplusNaive {
  friend bool operator==(const SoftplusNaive&, const SoftplusNaive&) = default;
};

struct Relu {
  friend bool operator==(const Relu&, const Relu&) = default;
};

class Elu {
 public:
  explicit Elu(double alpha = 1.0);
  double alpha() const noexcept { return alpha_; }
  friend bool operator==(const Elu&, const Elu&) = default;

 private:
  double alpha_;
};

struct Swish {
  friend bool operator==(const Swish&, const Swish&) = default;
};

/// Descriptor of one activation function and its parameters. Parameters are
/// validated when the alternative is constructed, so every Activation value
/// is evaluable.
class Activation {
 public:
  using Variant =
      std::variant<Squareplus, SoftplusStable, SoftplusNaive, Relu, Elu, Swish>;

  Activation(Squareplus a) : v_(a) {}
  Activation(SoftplusStable a) : v_(a) {}
  Activation(SoftplusNaive a) : v_(a) {}
  Activation(Relu a) : v_(a) {}
  Activation(Elu a) : v_(a) {}
  Activation(Swish a) : v_(a) {}

  const Variant& variant() const noexcept { return v_; }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), v_);
  }

  /// Short family name: "squareplus", "softplus_stable", ...
  std::string_view kind() const noexcept;
  /// Family name plus parameters, e.g. "squareplus(b=4)". Parses back
  /// through parse_activation().
  std::string name() const;

  /// Squareplus and softplus carry closed-form second derivatives; the
  /// others only provide a first derivative.
  bool has_second_derivative() const noexcept;

  template <std::floating_point T>
  T value(T x) const;
  template <std::floating_point T>
  T d1(T x) const;
  template <std::floating_point T>
  std::optional<T> d2(T x) const;

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  Variant v_;
};

/// Parses "relu", "swish", "silu", "softplus", "softplus_stable",
/// "softplus_naive", "elu", "elu(alpha=0.5)", "squareplus",
/// "squareplus(b=1.5)". Throws UsageError on anything else and DomainError
/// on an out-of-range parameter.
Activation parse_activation(std::string_view text);

/// The six rows of the CPU runtime comparison, slowest family first.
std::vector<Activation> table_activations();

// Per-alternative scalar evaluators. The kernels visit an Activation once
// and then run one of these in a tight loop.
template <std::floating_point T>
struct ScalarOps {
  static T value(const Squareplus& a, T x) noexcept {
    return unchecked::squareplus(x, static_cast<T>(a.b()));
  }
  static T d1(const Squareplus& a, T x) noexcept {
    return unchecked::squareplus_d1(x, static_cast<T>(a.b()));
  }
  static std::optional<T> d2(const Squareplus& a, T x) noexcept {
    return unchecked::squareplus_d2(x, static_cast<T>(a.b()));
  }

  static T value(const SoftplusStable&, T x) noexcept { return unchecked::softplus_stable(x); }
  static T d1(const SoftplusStable&, T x) noexcept { return unchecked::sigmoid(x); }
  static std::optional<T> d2(const SoftplusStable&, T x) noexcept {
    return unchecked::softplus_d2(x);
  }

  static T value(const SoftplusNaive&, T x) noexcept { return unchecked::softplus_naive(x); }
  static T d1(const SoftplusNaive&, T x) noexcept { return unchecked::sigmoid(x); }
  static std::optional<T> d2(const SoftplusNaive&, T x) noexcept {
    return unchecked::softplus_d2(x);
  }

  static T value(const Relu&, T x) noexcept { return unchecked::relu(x); }
  static T d1(const Relu&, T x) noexcept { return unchecked::relu_d1(x); }
  static std::optional<T> d2(const Relu&, T) noexcept { return std::nullopt; }

  static T value(const Elu& a, T x) noexcept {
    return unchecked::elu(x, static_cast<T>(a.alpha()));
  }
  static T d1(const Elu& a, T x) noexcept {
    return unchecked::elu_d1(x, static_cast<T>(a.alpha()));
  }
  static std::optional<T> d2(const Elu&, T) noexcept { return std::nullopt; }

  static T value(const Swish&, T x) noexcept { return unchecked::swish(x); }
  static T d1(const Swish&, T x) noexcept { return unchecked::swish_d1(x); }
  static std::optional<T> d2(const Swish&, T) noexcept { return std::nullopt; }
};

template <std::floating_point T>
T Activation::value(T x) const {
  return visit([x](const auto& a) { return ScalarOps<T>::value(a, x); });
}

template <std::floating_point T>
T Activation::d1(T x) const {
  return visit([x](const auto& a) { return ScalarOps<T>::d1(a, x); });
}

template <std::floating_point T>
std::optional<T> Activation::d2(T x) const {
  return visit([x](const auto& a) { return ScalarOps<T>::d2(a, x); });
}

}  // namespace sqp
