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

#ifndef DPCC_RNG_H_
#define DPCC_RNG_H_

#include <cstdint>
#include <random>

namespace dpcc {

// SplitMix64 finalizer. Used to derive engine seeds and stream seeds.
uint64_t SplitMix64(uint64_t x);

// Portable seeded random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. None of the <random> distributions are used since their outputs
// are implementation defined; every variate below is derived from raw 64-bit
// draws with the documented formulas so a seed reproduces across platforms
// and languages:
//
//   engine seed        = SplitMix64(seed)
//   Uniform()          = (draw >> 11) * 2^-53                     in [0, 1)
//   UniformOpen()      = ((draw >> 11) + 0.5) * 2^-53             in (0, 1)
//   UniformIndex(k)    = rejection sampling on draw mod k
//   Laplace(b)         = b * -ln(UniformOpen of the top 53 bits), sign from
//                        the lowest bit of the same draw
//   Stream(i)          = Rng(SplitMix64(seed ^ SplitMix64(i + 1)))
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  uint64_t Next() { return engine_(); }
  double Uniform();
  double UniformOpen();
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformIndex(uint64_t bound);
  bool Bernoulli(double p) { return Uniform() < p; }
  double Laplace(double scale);

  // Independent child stream; depends only on (seed, index), never on how
  // many values were drawn from this generator.
  Rng Stream(uint64_t index) const;

  // UniformRandomBitGenerator interface so std::shuffle et al. accept Rng.
  // Only use with algorithms whose draw pattern is specified.
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }
  uint64_t operator()() { return Next(); }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// Fisher-Yates with UniformIndex; portable unlike std::shuffle.
template <typename Container>
void Shuffle(Container& values, Rng& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    size_t j = rng.UniformIndex(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace dpcc

#endif  // DPCC_RNG_H_
