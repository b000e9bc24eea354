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

#include "sparselab/seeds.hpp"

namespace sparselab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                std::string_view stream_tag) {
  std::uint64_t tag_hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream_tag) {
    tag_hash ^= c;
    tag_hash *= 0x100000001b3ULL;
  }
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ trial_index);
  h = mix64(h ^ tag_hash);
  return h;
}

}  // namespace sparselab
