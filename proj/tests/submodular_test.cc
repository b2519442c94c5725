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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "saco/core/error.h"
#include "saco/submodular/greedy.h"
#include "saco/submodular/objective.h"
#include "test_util.h"

namespace saco::submodular {
namespace {

using testing::DenseInstance;
using testing::OracleTerms;
using testing::OracleValue;
using testing::RandomProblem;

SelectionProblem DenseProblem(const Eigen::MatrixXd& s, const Eigen::MatrixXd& l,
                              std::vector<int> labels, int classes) {
  return SelectionProblem(AffinityGraph::FromDense(s), AffinityGraph::FromDense(l),
                          std::move(labels), classes);
}

SelectionProblem AllOnesProblem(int m, std::vector<int> labels, int classes) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(m, m);
  return DenseProblem(ones, ones, std::move(labels), classes);
}

// Disconnected graphs: every element only covers itself.
SelectionProblem IsolatedProblem(std::vector<int> labels, int classes) {
  const int m = static_cast<int>(labels.size());
  const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(m, m);
  return DenseProblem(zeros, zeros, std::move(labels), classes);
}

TEST(ObjectiveTest, EmptySetIsZero) {
  const auto problem = RandomProblem(20, 3, 5, 1);
  SelectionState state(problem);
  const TermValues t = state.Terms();
  EXPECT_EQ(t.representative, 0.0);
  EXPECT_EQ(t.spatial, 0.0);
  EXPECT_EQ(t.discriminative, 0.0);
  EXPECT_EQ(t.balance, 0.0);
  EXPECT_EQ(t.compact, 0.0);
  EXPECT_EQ(Evaluate(state, ObjectiveWeights{}), 0.0);
  EXPECT_EQ(state.ClusterOf(3), -1);
}

TEST(ObjectiveTest, RepresentativeAllOnes) {
  const auto problem = AllOnesProblem(5, {0, 0, 1, 1, 0}, 2);
  SelectionState state(problem);
  state.Add(2);
  EXPECT_DOUBLE_EQ(TermRepresentative(state), 5.0);
  EXPECT_DOUBLE_EQ(TermSpatial(state), 5.0);
}

TEST(ObjectiveTest, DiscriminativePureClusters) {
  // Two components, each of one class; one exemplar per component.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      s(i, j) = 0.5;
      s(i + 3, j + 3) = 0.5;
    }
  }
  const auto problem = DenseProblem(s, s, {0, 0, 0, 1, 1, 1}, 2);
  SelectionState state(problem);
  state.Add(1);
  state.Add(4);
  EXPECT_DOUBLE_EQ(TermDiscriminative(state), 1.0 - 2.0);
}

TEST(ObjectiveTest, DiscriminativeSixtyForty) {
  std::vector<int> labels(100, 0);
  for (int i = 60; i < 100; ++i) labels[i] = 1;
  const auto problem = IsolatedProblem(labels, 2);
  SelectionState state(problem);
  state.Add(7);
  EXPECT_NEAR(TermDiscriminative(state), -0.4, 1e-15);
  EXPECT_EQ(state.ClusterSize(7), 100);
}

TEST(ObjectiveTest, BalanceExamples) {
  const auto problem = IsolatedProblem({0, 0, 1, 1, 1, 2}, 3);
  SelectionState state(problem);
  EXPECT_EQ(TermBalance(state), 0.0);
  state.Add(0);
  EXPECT_NEAR(TermBalance(state), std::log(2.0), 1e-15);
  state.Add(1);
  state.Add(2);
  state.Add(3);
  state.Add(4);
  state.Add(5);
  // |A_c| = (2, 3, 1)
  EXPECT_NEAR(TermBalance(state), std::log(3.0) + std::log(4.0) + std::log(2.0), 1e-14);
}

TEST(ObjectiveTest, CompactExamples) {
  {
    const auto problem = AllOnesProblem(4, {0, 1, 0, 1}, 2);
    SelectionState state(problem);
    state.Add(0);
    EXPECT_DOUBLE_EQ(TermCompact(state), -1.0);
  }
  {
    // Two components of equal size, one exemplar each: 50/50 split.
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
    s(0, 1) = s(1, 0) = 0.9;
    s(2, 3) = s(3, 2) = 0.9;
    const auto problem = DenseProblem(s, s, {0, 0, 1, 1}, 2);
    SelectionState state(problem);
    state.Add(0);
    state.Add(2);
    EXPECT_NEAR(TermCompact(state), std::log(2.0) - 2.0, 1e-15);
  }
}

TEST(ObjectiveTest, ZeroWeightsReduceToRepresentative) {
  const auto problem = RandomProblem(30, 3, 6, 2);
  SelectionState state(problem);
  for (int i : {4, 11, 20}) state.Add(i);
  const ObjectiveWeights zero{0.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(Evaluate(state, zero), TermRepresentative(state));
}

TEST(ObjectiveTest, TermsMatchDenseOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto problem = RandomProblem(30, 3, 6, seed);
    const DenseInstance dense = testing::ToDense(problem);
    std::mt19937_64 rng(seed);
    std::vector<int> order(30);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    SelectionState state(problem);
    std::vector<int> set;
    for (int k = 0; k < 6; ++k) {
      state.Add(order[k]);
      set.push_back(order[k]);
      const TermValues got = state.Terms();
      const TermValues want = OracleTerms(dense, set);
      EXPECT_NEAR(got.representative, want.representative, 1e-9);
      EXPECT_NEAR(got.spatial, want.spatial, 1e-9);
      EXPECT_NEAR(got.discriminative, want.discriminative, 1e-9);
      EXPECT_NEAR(got.balance, want.balance, 1e-9);
      EXPECT_NEAR(got.compact, want.compact, 1e-9);
      const TermValues scratch = EvaluateFromScratch(problem, set);
      EXPECT_NEAR(scratch.compact, want.compact, 1e-9);
      EXPECT_NEAR(scratch.representative, want.representative, 1e-9);
    }
  }
}

TEST(ObjectiveTest, StateInvariants) {
  const auto problem = RandomProblem(40, 4, 5, 9);
  const DenseInstance dense = testing::ToDense(problem);
  SelectionState state(problem);
  for (int i : {12, 3, 30, 7, 25}) {
    state.Add(i);
    int assigned = 0;
    for (int e : state.selected()) assigned += state.ClusterSize(e);
    EXPECT_EQ(assigned, problem.size());
    const auto per_class = state.per_class_selected();
    EXPECT_EQ(std::accumulate(per_class.begin(), per_class.end(), 0),
              static_cast<int>(state.selected().size()));
    for (int j = 0; j < problem.size(); ++j) {
      double best = 0.0;
      for (int e : state.selected()) best = std::max(best, dense.feature(e, j));
      EXPECT_EQ(state.best_sim_feature()[j], best);
    }
  }
}

TEST(ObjectiveTest, MarginalGainMatchesEvaluationDifference) {
  const ObjectiveWeights weights{0.7, 1.3, 0.5, 2.0};
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto problem = RandomProblem(35, 3, 7, 100 + seed);
    const DenseInstance dense = testing::ToDense(problem);
    SelectionState state(problem);
    std::vector<int> set;
    std::mt19937_64 rng(seed);
    for (int step = 0; step < 5; ++step) {
      const double base = OracleValue(dense, set, weights);
      for (int c = 0; c < problem.size(); ++c) {
        if (state.IsSelected(c)) continue;
        auto with = set;
        with.push_back(c);
        EXPECT_NEAR(MarginalGain(state, c, weights), OracleValue(dense, with, weights) - base,
                    1e-9);
      }
      int next;
      do {
        next = static_cast<int>(rng() % problem.size());
      } while (state.IsSelected(next));
      state.Add(next);
      set.push_back(next);
    }
  }
}

TEST(ObjectiveTest, FirstGainIsSingletonValue) {
  const auto problem = RandomProblem(25, 2, 5, 4);
  const DenseInstance dense = testing::ToDense(problem);
  const ObjectiveWeights weights;
  SelectionState state(problem);
  for (int c = 0; c < problem.size(); ++c) {
    EXPECT_NEAR(MarginalGain(state, c, weights), OracleValue(dense, {c}, weights), 1e-12);
  }
}

TEST(ObjectiveTest, DuplicateCandidateAddsNoCoverage) {
  // Elements 0 and 1 are exact duplicates in both graphs.
  Eigen::MatrixXd s(4, 4);
  s << 0, 1, 0.3, 0.1,
       1, 0, 0.3, 0.1,
       0.3, 0.3, 0, 0.5,
       0.1, 0.1, 0.5, 0;
  const auto problem = DenseProblem(s, s, {0, 0, 1, 1}, 2);
  SelectionState state(problem);
  state.Add(0);
  const TermValues gains = state.Gains(1);
  EXPECT_EQ(gains.representative, 0.0);
  EXPECT_EQ(gains.spatial, 0.0);
  EXPECT_NEAR(gains.balance, std::log(3.0) - std::log(2.0), 1e-15);
  EXPECT_NEAR(gains.compact, -1.0, 1e-15);  // ties go to element 0, cluster sizes unchanged
}

TEST(ObjectiveTest, RejectsSelectedOrOutOfRangeCandidates) {
  const auto problem = RandomProblem(10, 2, 3, 5);
  SelectionState state(problem);
  state.Add(3);
  EXPECT_THROW(state.Gains(3), Error);
  EXPECT_THROW(state.Add(3), Error);
  EXPECT_THROW(state.Gains(10), Error);
  EXPECT_THROW(state.Gains(-1), Error);
}

TEST(ObjectiveTest, ProblemValidation) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
  EXPECT_THROW(DenseProblem(ones, ones, {0, 1}, 2), Error);
  EXPECT_THROW(DenseProblem(ones, ones, {0, 1, 2}, 2), Error);
  EXPECT_THROW((ObjectiveWeights{-1.0, 0, 0, 0}.Validate()), Error);
}

TEST(GreedyTest, SingleElement) {
  const auto problem = IsolatedProblem({0}, 1);
  const ObjectiveWeights weights;
  SelectionState empty(problem);
  const double singleton = MarginalGain(empty, 0, weights);
  const SelectionResult result = NaiveGreedy(problem, weights, 3);
  EXPECT_EQ(result.selected.size(), singleton >= 0.0 ? 1u : 0u);
  EXPECT_EQ(LazyGreedy(problem, weights, 3).selected, result.selected);
}

TEST(GreedyTest, NegativeGainsStopImmediately) {
  const auto problem = RandomProblem(20, 3, 4, 8);
  const ObjectiveWeights heavy{1.0, 50.0, 0.0, 50.0};
  const SelectionResult naive = NaiveGreedy(problem, heavy, 5);
  EXPECT_TRUE(naive.selected.empty());
  EXPECT_TRUE(naive.stopped_on_negative_gain);
  EXPECT_EQ(naive.value, 0.0);
  EXPECT_TRUE(LazyGreedy(problem, heavy, 5).selected.empty());
}

TEST(GreedyTest, KLargerThanGroundSetIsTruncated) {
  const auto problem = RandomProblem(6, 2, 3, 11);
  const ObjectiveWeights monotone{1.0, 0.0, 1.0, 0.0};
  const SelectionResult result = NaiveGreedy(problem, monotone, 50);
  EXPECT_EQ(result.selected.size(), 6u);
  EXPECT_THROW(NaiveGreedy(problem, monotone, 0), Error);
}

TEST(ObjectiveTest, CoverageAndBalanceHaveDiminishingReturns) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto problem = RandomProblem(25, 3, 3 + trial % 6, 700 + trial);
    std::vector<int> order(25);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int b_size = static_cast<int>(rng() % 8);
    SelectionState small(problem);
    SelectionState large(problem);
    for (int k = 0; k < b_size; ++k) {
      if (rng() % 2) small.Add(order[k]);
      large.Add(order[k]);
    }
    const TermValues ga = small.Gains(order[b_size]);
    const TermValues gb = large.Gains(order[b_size]);
    EXPECT_GE(ga.representative, gb.representative - 1e-9);
    EXPECT_GE(ga.spatial, gb.spatial - 1e-9);
    EXPECT_GE(ga.balance, gb.balance - 1e-9);
    EXPECT_GE(gb.representative, 0.0);
    EXPECT_GE(gb.spatial, 0.0);
    EXPECT_GE(gb.balance, 0.0);
  }
}

TEST(ObjectiveTest, CompactFirstGainIsMinusOne) {
  // One cluster holding everything has zero entropy, so only the -|A| part
  // counts; this is why the term is not submodular.
  const auto problem = RandomProblem(20, 2, 4, 9);
  const SelectionState empty(problem);
  for (int i = 0; i < 20; ++i) EXPECT_DOUBLE_EQ(empty.Gains(i).compact, -1.0);
}

TEST(GreedyTest, SelectionValueMatchesOracle) {
  const auto problem = RandomProblem(50, 3, 6, 12);
  const ObjectiveWeights weights;
  GreedyOptions verify;
  verify.verify = true;
  const SelectionResult result = LazyGreedy(problem, weights, 10, verify);
  EXPECT_NEAR(result.value, OracleValue(testing::ToDense(problem), result.selected, weights), 1e-9);
  double total = 0.0;
  for (double g : result.gains) total += g;
  EXPECT_NEAR(total, result.value, 1e-9);
}

TEST(GreedyTest, LazyMatchesNaive) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto problem = RandomProblem(80, 3, 8, 200 + seed);
    for (const ObjectiveWeights& w :
         {ObjectiveWeights{}, ObjectiveWeights{1.0, 0.0, 1.0, 0.0},
          ObjectiveWeights{0.5, 2.0, 0.3, 0.1}}) {
      const SelectionResult naive = NaiveGreedy(problem, w, 15);
      const SelectionResult lazy = LazyGreedy(problem, w, 15);
      EXPECT_EQ(naive.selected, lazy.selected) << "seed " << seed;
      EXPECT_LE(lazy.evaluations, naive.evaluations + problem.size());
    }
  }
}

TEST(BruteForceTest, Singletons) {
  const auto problem = RandomProblem(3, 2, 2, 13);
  const DenseInstance dense = testing::ToDense(problem);
  const ObjectiveWeights weights{1.0, 0.0, 1.0, 0.0};
  const BruteForceResult best = BruteForceOptimum(problem, weights, 1);
  double want = 0.0;
  for (int i = 0; i < 3; ++i) want = std::max(want, OracleValue(dense, {i}, weights));
  EXPECT_DOUBLE_EQ(best.value, want);
  EXPECT_EQ(best.subsets_evaluated, 4);
}

TEST(BruteForceTest, FullSetConsidersSmallerSubsets) {
  const auto problem = RandomProblem(6, 2, 3, 14);
  const DenseInstance dense = testing::ToDense(problem);
  const ObjectiveWeights weights;
  const BruteForceResult best = BruteForceOptimum(problem, weights, 6);
  EXPECT_EQ(best.subsets_evaluated, 64);
  double want = 0.0;
  for (int mask = 1; mask < 64; ++mask) {
    std::vector<int> set;
    for (int i = 0; i < 6; ++i) {
      if (mask & (1 << i)) set.push_back(i);
    }
    want = std::max(want, OracleValue(dense, set, weights));
  }
  EXPECT_NEAR(best.value, want, 1e-12);
  EXPECT_LT(best.subset.size(), 6u);
}

TEST(BruteForceTest, RefusesLargeInstances) {
  const auto problem = RandomProblem(60, 2, 3, 15);
  EXPECT_THROW(BruteForceOptimum(problem, ObjectiveWeights{}, 10), Error);
}

TEST(BruteForceTest, GreedyWithinApproximationBound) {
  const ObjectiveWeights monotone{1.0, 0.0, 1.0, 0.0};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto problem = RandomProblem(12, 3, 4, 300 + seed);
    const double opt = BruteForceOptimum(problem, monotone, 4).value;
    const double greedy = NaiveGreedy(problem, monotone, 4).value;
    EXPECT_GE(greedy, (1.0 - std::exp(-1.0)) * opt - 1e-9);
    EXPECT_LE(greedy, opt + 1e-9);
  }
}

TEST(SelectionFileTest, FormatAndParse) {
  const auto problem = RandomProblem(30, 3, 5, 16);
  const SelectionResult result = LazyGreedy(problem, ObjectiveWeights{}, 5);
  const std::string text = FormatSelection(result);
  EXPECT_EQ(text.rfind("step,patch_id,gain,evaluations\n", 0), 0u);
  const SelectionResult parsed = ParseSelection(text);
  EXPECT_EQ(parsed.selected, result.selected);
  EXPECT_EQ(parsed.gains, result.gains);
}

}  // namespace
}  // namespace saco::submodular
