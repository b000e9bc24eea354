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

#ifndef SPARSELAB_EXEC_HPP_
#define SPARSELAB_EXEC_HPP_

namespace sparselab {

// Kernels with an OpenMP path also keep a plain serial path; both must give
// identical results.
enum class Exec { serial, parallel };

// 0 leaves the OpenMP default in place.
void set_thread_count(int threads);
int thread_count();

}  // namespace sparselab

#endif  // SPARSELAB_EXEC_HPP_
