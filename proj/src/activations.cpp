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

#include "sqp/activations.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "sqp/csv.hpp"

namespace sqp {

namespace detail {

void throw_negative_b(double b) {
  throw DomainError("squareplus: b must be >= 0, got " + format_shortest(b));
}

void throw_bad_alpha(double alpha) {
  throw DomainError("elu: alpha must be > 0, got " + format_shortest(alpha));
}

}  // namespace detail

std::string_view to_string(Precision p) noexcept {
  return p == Precision::Single ? "single" : "double";
}

Precision parse_precision(std::string_view text) {
  if (text == "single" || text == "float" || text == "f32") return Precision::Single;
  if (text == "double" || text == "f64") return Precision::Double;
  throw UsageError("unknown precision '" + std::string(text) + "'");
}

double rescale_b(double a, double b) {
  if (!(a > 0.0)) throw DomainError("rescale_b: a must be > 0, got " + format_shortest(a));
  if (!(b >= 0.0)) detail::throw_negative_b(b);
  return b / (a * a);
}

Squareplus::Squareplus(double b) : b_(b) {
  if (!(b >= 0.0) || !std::isfinite(b)) detail::throw_negative_b(b);
}

Elu::Elu(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) detail::throw_bad_alpha(alpha);
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "family(key=value)" into its parts. The parenthesised part is
// optional.
struct ParsedName {
  std::string_view family;
  std::string_view key;
  std::string_view value;
};

ParsedName split_name(std::string_view text) {
  text = trim(text);
  ParsedName out;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    out.family = text;
    return out;
  }
  if (text.back() != ')') throw UsageError("malformed activation '" + std::string(text) + "'");
  out.family = trim(text.substr(0, open));
  const auto inner = text.substr(open + 1, text.size() - open - 2);
  const auto eq = inner.find('=');
  if (eq == std::string_view::npos) {
    out.value = trim(inner);
  } else {
    out.key = trim(inner.substr(0, eq));
    out.value = trim(inner.substr(eq + 1));
  }
  return out;
}

}  // namespace

std::string_view Activation::kind() const noexcept {
  return std::visit(Overloaded{
                        [](const Squareplus&) { return std::string_view("squareplus"); },
                        [](const SoftplusStable&) { return std::string_view("softplus_stable"); },
                        [](const SoftplusNaive&) { return std::string_view("softplus_naive"); },
                        [](const Relu&) { return std::string_view("relu"); },
                        [](const Elu&) { return std::string_view("elu"); },
                        [](const Swish&) { return std::string_view("swish"); },
                    },
                    v_);
}

std::string Activation::name() const {
  if (const auto* s = std::get_if<Squareplus>(&v_)) {
    return "squareplus(b=" + format_shortest(s->b()) + ")";
  }
  if (const auto* e = std::get_if<Elu>(&v_)) {
    return "elu(alpha=" + format_shortest(e->alpha()) + ")";
  }
  return std::string(kind());
}

bool Activation::has_second_derivative() const noexcept {
  return std::holds_alternative<Squareplus>(v_) || std::holds_alternative<SoftplusStable>(v_) ||
         std::holds_alternative<SoftplusNaive>(v_);
}

Activation parse_activation(std::string_view text) {
  const ParsedName p = split_name(text);
  auto param = [&](std::string_view expected_key, double fallback) {
    if (p.value.empty()) return fallback;
    if (!p.key.empty() && p.key != expected_key) {
      throw UsageError("unknown parameter '" + std::string(p.key) + "' for " +
                       std::string(p.family));
    }
    return parse_real(p.value);
  };
  auto no_param = [&] {
    if (!p.value.empty() || !p.key.empty()) {
      throw UsageError(std::string(p.family) + " takes no parameters");
    }
  };

  if (p.family == "squareplus") return Squareplus(param("b", kBUnit));
  if (p.family == "elu") return Elu(param("alpha", 1.0));
  if (p.family == "softplus" || p.family == "softplus_stable") {
    no_param();
    return SoftplusStable{};
  }
  if (p.family == "softplus_naive") {
    no_param();
    return SoftplusNaive{};
  }
  if (p.family == "relu") {
    no_param();
    return Relu{};
  }
  if (p.family == "swish" || p.family == "silu") {
    no_param();
    return Swish{};
  }
  throw UsageError("unknown activation '" + std::string(text) + "'");
}

std::vector<Activation> table_activations() {
  return {SoftplusStable{}, SoftplusNaive{}, Elu{1.0}, Swish{}, Relu{}, Squareplus{kBUnit}};
}

}  // namespace sqp
