// Copyright 2026 The sparselab Authors
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

#ifndef SPARSELAB_SELFTEST_HPP_
#define SPARSELAB_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace sparselab {

struct SelftestResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  bool passed() const { return failures == 0; }
};

// Quick randomized runs of the deterministic identities and bounds.
std::vector<SelftestResult> run_selftest(std::uint64_t seed = 1, int scale = 1);

}  // namespace sparselab

#endif  // SPARSELAB_SELFTEST_HPP_
