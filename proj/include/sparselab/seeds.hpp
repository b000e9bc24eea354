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

#ifndef SPARSELAB_SEEDS_HPP_
#define SPARSELAB_SEEDS_HPP_

#include <cstdint>
#include <string_view>

namespace sparselab {

// Counter-based seed derivation: a pure function of (master, index, tag)
// built from FNV-1a over the tag and splitmix64 finalizers, so results are
// identical on every platform and independent of trial execution order.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                std::string_view stream_tag);

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sparselab

#endif  // SPARSELAB_SEEDS_HPP_
