// Copyright 2026 The hnep Authors
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

#ifndef HNEP_RANDOM_HPP_
#define HNEP_RANDOM_HPP_

#include <random>

namespace hnep {

// Portable uniform draw on [lo, hi): the top 53 bits of one mt19937_64
// output, scaled. std::uniform_real_distribution is avoided because its
// output is implementation-defined.
inline double uniform(std::mt19937_64& engine, double lo, double hi) {
  const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace hnep

#endif  // HNEP_RANDOM_HPP_
