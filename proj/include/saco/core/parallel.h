// Copyright 2026 The Authors.
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

#ifndef SACO_CORE_PARALLEL_H_
#define SACO_CORE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace saco {

// Process-wide worker cap used by every parallel loop. 1 = serial.
void SetThreadCount(int threads);
int ThreadCount();

// Calls body(i) for i in [0, n). Iterations must write disjoint outputs; the
// result is then independent of scheduling.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace saco

#endif  // SACO_CORE_PARALLEL_H_
