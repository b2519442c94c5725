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

#ifndef SACO_SUBMODULAR_GREEDY_H_
#define SACO_SUBMODULAR_GREEDY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "saco/submodular/objective.h"

namespace saco::submodular {

struct GreedyOptions {
  // Recompute every term from scratch after each step and fail if the
  // incremental state disagrees by more than 1e-9.
  bool verify = false;
};

struct SelectionResult {
  std::vector<int> selected;  // selection order
  std::vector<double> gains;  // gain of each selected element when added
  // Cumulative gain evaluations when each element was selected.
  std::vector<std::int64_t> evaluations_at_step;
  std::int64_t evaluations = 0;
  double value = 0.0;
  // True when selection stopped because the best gain was negative.
  bool stopped_on_negative_gain = false;
};

// Adds the argmax-gain element (lowest id on ties) until `max_selected`
// elements are chosen, the ground set is exhausted, or the best gain is
// negative.
SelectionResult NaiveGreedy(const SelectionProblem& problem, const ObjectiveWeights& weights,
                            int max_selected, const GreedyOptions& options = {});

// Same output contract as NaiveGreedy, but keeps stale gains in a max-heap
// and only recomputes the gain of the element on top.
SelectionResult LazyGreedy(const SelectionProblem& problem, const ObjectiveWeights& weights,
                           int max_selected, const GreedyOptions& options = {});

struct BruteForceResult {
  std::vector<int> subset;  // ascending ids
  double value = 0.0;
  std::int64_t subsets_evaluated = 0;
};

inline constexpr std::int64_t kMaxBruteForceSubsets = 1'000'000;

// Exhaustive maximum of F over all subsets of size <= max_size (the empty set
// included). Refuses with kInvalidInput when that is more than
// kMaxBruteForceSubsets subsets.
BruteForceResult BruteForceOptimum(const SelectionProblem& problem,
                                   const ObjectiveWeights& weights, int max_size);

// CSV: step,patch_id,gain,evaluations
std::string FormatSelection(const SelectionResult& result);
SelectionResult ParseSelection(const std::string& text, const std::string& source = "<selection>");

}  // namespace saco::submodular

#endif  // SACO_SUBMODULAR_GREEDY_H_
