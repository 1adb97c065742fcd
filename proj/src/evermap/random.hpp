/*
 * Copyright 2026 The Evermap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EVERMAP_RANDOM_HPP_
#define EVERMAP_RANDOM_HPP_

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

namespace evermap {

// Deterministic random stream. Child streams are derived from (seed, tag)
// through splitmix64 so independent consumers never share state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  RandomStream split(std::uint64_t tag) const {
    return RandomStream(mix(seed_ ^ mix(tag + 0x9e3779b97f4a7c15ULL)));
  }

  double normal(double mean, double sigma) {
    if (sigma == 0.0) return mean;
    boost::random::normal_distribution<double> dist(mean, sigma);
    return dist(engine_);
  }

  std::int64_t poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    boost::random::poisson_distribution<std::int64_t, double> dist(mean);
    return dist(engine_);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  boost::random::mt19937_64 engine_;
};

}  // namespace evermap

#endif  // EVERMAP_RANDOM_HPP_
