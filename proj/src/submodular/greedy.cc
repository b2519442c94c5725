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

#include "saco/submodular/greedy.h"

#include <cmath>
#include <queue>
#include <sstream>

#include "saco/core/csv.h"
#include "saco/core/error.h"
#include "saco/core/parallel.h"

namespace saco::submodular {
namespace {

void CheckAgainstScratch(const SelectionState& state) {
  const TermValues incremental = state.Terms();
  const TermValues scratch = EvaluateFromScratch(state.problem(), state.selected());
  const double diffs[] = {incremental.representative - scratch.representative,
                          incremental.spatial - scratch.spatial,
                          incremental.discriminative - scratch.discriminative,
                          incremental.balance - scratch.balance,
                          incremental.compact - scratch.compact};
  for (double d : diffs) {
    Require(std::abs(d) <= 1e-9, ErrorCode::kDegenerateInput,
            "incremental objective drifted from recomputation after " +
                std::to_string(state.selected().size()) + " selections");
  }
}

void Validate(const SelectionProblem& problem, const ObjectiveWeights& weights,
              int max_selected) {
  weights.Validate();
  Require(max_selected >= 1, ErrorCode::kInvalidConfig, "K must be >= 1");
  (void)problem;
}

void Record(SelectionResult& result, SelectionState& state, int element, double gain,
            const GreedyOptions& options) {
  state.Add(element);
  result.selected.push_back(element);
  result.gains.push_back(gain);
  result.evaluations_at_step.push_back(result.evaluations);
  if (options.verify) CheckAgainstScratch(state);
}

}  // namespace

SelectionResult NaiveGreedy(const SelectionProblem& problem, const ObjectiveWeights& weights,
                            int max_selected, const GreedyOptions& options) {
  Validate(problem, weights, max_selected);
  const int m = problem.size();
  const int limit = std::min(max_selected, m);
  SelectionState state(problem);
  SelectionResult result;
  std::vector<double> gains(m);
  while (static_cast<int>(result.selected.size()) < limit) {
    ParallelFor(static_cast<std::size_t>(m), [&](std::size_t i) {
      const int candidate = static_cast<int>(i);
      if (!state.IsSelected(candidate)) gains[i] = MarginalGain(state, candidate, weights);
    });
    int best = -1;
    for (int i = 0; i < m; ++i) {
      if (state.IsSelected(i)) continue;
      ++result.evaluations;
      if (best < 0 || gains[i] > gains[best]) best = i;
    }
    if (gains[best] < 0.0) {
      result.stopped_on_negative_gain = true;
      break;
    }
    Record(result, state, best, gains[best], options);
  }
  result.value = Evaluate(state, weights);
  return result;
}

SelectionResult LazyGreedy(const SelectionProblem& problem, const ObjectiveWeights& weights,
                           int max_selected, const GreedyOptions& options) {
  Validate(problem, weights, max_selected);
  const int m = problem.size();
  const int limit = std::min(max_selected, m);

  // Heap entries carry an upper bound on the element's gain that stays valid
  // for every later step (see SelectionState::GainWithBound). Max-heap on
  // the bound, lowest element id first on ties.
  struct Entry {
    double bound;
    int element;
  };
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.bound < b.bound || (a.bound == b.bound && a.element > b.element);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);

  SelectionState state(problem);
  SelectionResult result;
  std::vector<double> exact(m);
  std::vector<double> bound(m);
  std::vector<int> computed_at(m, 0);
  ParallelFor(static_cast<std::size_t>(m), [&](std::size_t i) {
    const auto g = state.GainWithBound(static_cast<int>(i));
    exact[i] = g.gains.Weighted(weights);
    bound[i] = std::max(exact[i], g.bounds.Weighted(weights));
  });
  for (int i = 0; i < m; ++i) heap.push({bound[i], i});
  result.evaluations = m;

  std::vector<int> touched;
  while (static_cast<int>(result.selected.size()) < limit && !heap.empty()) {
    const int step = static_cast<int>(result.selected.size());
    int best = -1;
    touched.clear();
    // Pop until no remaining bound can beat (or tie with a lower id) the best
    // exact gain seen this step; that element is then the exact argmax.
    while (!heap.empty()) {
      const Entry top = heap.top();
      if (best >= 0 && (top.bound < exact[best] ||
                        (top.bound == exact[best] && top.element > best))) {
        break;
      }
      heap.pop();
      const int e = top.element;
      if (computed_at[e] != step) {
        const auto g = state.GainWithBound(e);
        exact[e] = g.gains.Weighted(weights);
        bound[e] = std::max(exact[e], g.bounds.Weighted(weights));
        computed_at[e] = step;
        ++result.evaluations;
      }
      touched.push_back(e);
      if (best < 0 || exact[e] > exact[best] || (exact[e] == exact[best] && e < best)) best = e;
    }
    if (best < 0) break;
    if (exact[best] < 0.0) {
      result.stopped_on_negative_gain = true;
      break;
    }
    Record(result, state, best, exact[best], options);
    for (int e : touched) {
      if (e != best) heap.push({bound[e], e});
    }
  }
  result.value = Evaluate(state, weights);
  return result;
}

BruteForceResult BruteForceOptimum(const SelectionProblem& problem,
                                   const ObjectiveWeights& weights, int max_size) {
  weights.Validate();
  const int m = problem.size();
  Require(max_size >= 0, ErrorCode::kInvalidConfig, "subset size must be non-negative");
  const int k_max = std::min(max_size, m);

  // Number of subsets of size <= k_max, saturating.
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) binom = binom * (m - k + 1) / k;
    total += binom;
    Require(binom <= kMaxBruteForceSubsets && total <= kMaxBruteForceSubsets,
            ErrorCode::kInvalidInput,
            "brute force refused: more than " + std::to_string(kMaxBruteForceSubsets) +
                " subsets for M=" + std::to_string(m) + ", K=" + std::to_string(max_size));
  }

  BruteForceResult best;
  best.value = 0.0;  // the empty set
  best.subsets_evaluated = 1;
  std::vector<int> subset;
  for (int k = 1; k <= k_max; ++k) {
    subset.resize(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    while (true) {
      SelectionState state(problem);
      for (int element : subset) state.Add(element);
      const double value = Evaluate(state, weights);
      ++best.subsets_evaluated;
      if (value > best.value) {
        best.value = value;
        best.subset = subset;
      }
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  return best;
}

std::string FormatSelection(const SelectionResult& result) {
  std::ostringstream out;
  out << "step,patch_id,gain,evaluations\n";
  for (std::size_t k = 0; k < result.selected.size(); ++k) {
    out << k << ',' << result.selected[k] << ',' << FormatDouble(result.gains[k]) << ','
        << result.evaluations_at_step[k] << '\n';
  }
  return out.str();
}

SelectionResult ParseSelection(const std::string& text, const std::string& source) {
  const CsvTable table = CsvTable::Parse(text, source);
  const std::size_t patch = table.Column("patch_id");
  const std::size_t gain = table.Column("gain");
  const std::size_t evals = table.Column("evaluations");
  SelectionResult result;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    result.selected.push_back(table.IntField(r, patch));
    result.gains.push_back(table.DoubleField(r, gain));
    result.evaluations_at_step.push_back(std::stoll(table.Field(r, evals)));
  }
  if (!result.evaluations_at_step.empty()) result.evaluations = result.evaluations_at_step.back();
  return result;
}

}  // namespace saco::submodular
