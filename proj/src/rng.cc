//
// Copyright 2026 The dpcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpcc/rng.h"

#include <cmath>

#include "dpcc/status.h"

namespace dpcc {
namespace {

constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(SplitMix64(seed)) {}

double Rng::Uniform() {
  return static_cast<double>(Next() >> 11) * kTwoPowMinus53;
}

double Rng::UniformOpen() {
  return (static_cast<double>(Next() >> 11) + 0.5) * kTwoPowMinus53;
}

uint64_t Rng::UniformIndex(uint64_t bound) {
  if (bound == 0) throw ParameterError("UniformIndex: bound must be positive");
  // Largest multiple of bound representable; draws at or above it are
  // rejected so the result is exactly uniform.
  const uint64_t limit = max() - (max() % bound + 1) % bound;
  uint64_t draw;
  do {
    draw = Next();
  } while (draw > limit);
  return draw % bound;
}

double Rng::Laplace(double scale) {
  const uint64_t draw = Next();
  const double u = (static_cast<double>(draw >> 11) + 0.5) * kTwoPowMinus53;
  const double magnitude = -scale * std::log(u);
  return (draw & 1) ? -magnitude : magnitude;
}

Rng Rng::Stream(uint64_t index) const {
  return Rng(SplitMix64(seed_ ^ SplitMix64(index + 1)));
}

}  // namespace dpcc
