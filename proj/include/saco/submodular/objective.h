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

#ifndef SACO_SUBMODULAR_OBJECTIVE_H_
#define SACO_SUBMODULAR_OBJECTIVE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "saco/core/affinity.h"
#include "saco/core/types.h"

namespace saco::submodular {

// Relative weights of the spatial, discriminative, balance and compactness
// terms; the representative term always has weight 1.
struct ObjectiveWeights {
  double lambda_s = 1.0;
  double lambda_d = 1.0;
  double lambda_b = 1.0;
  double lambda_c = 1.0;

  void Validate() const;
};

// Values (or marginal gains) of the five objective terms.
struct TermValues {
  double representative = 0.0;
  double spatial = 0.0;
  double discriminative = 0.0;
  double balance = 0.0;
  double compact = 0.0;

  double Weighted(const ObjectiveWeights& w) const {
    return representative + w.lambda_s * spatial + w.lambda_d * discriminative +
           w.lambda_b * balance + w.lambda_c * compact;
  }
};

// Immutable data the objective is defined over: the feature graph S, the
// spatial graph L and the class label of every ground-set element.
class SelectionProblem {
 public:
  SelectionProblem(AffinityGraph feature_graph, AffinityGraph spatial_graph,
                   std::vector<int> labels, int num_classes);

  // Labels are taken from the patches; patch k is ground-set element k.
  static SelectionProblem FromPatches(std::span<const Patch> patches, AffinityGraph feature_graph,
                                      AffinityGraph spatial_graph);

  int size() const { return static_cast<int>(labels_.size()); }
  int num_classes() const { return num_classes_; }
  const std::vector<int>& labels() const { return labels_; }
  const AffinityGraph& feature_graph() const { return feature_graph_; }
  const AffinityGraph& spatial_graph() const { return spatial_graph_; }

 private:
  AffinityGraph feature_graph_;
  AffinityGraph spatial_graph_;
  std::vector<int> labels_;
  int num_classes_;
};

// Incremental bookkeeping for a growing exemplar set A.
//
// Every ground-set element j is assigned to the exemplar with the highest
// feature similarity S_ij (self-similarity for j in A), lowest exemplar id on
// ties. Elements with zero similarity to every exemplar therefore all belong
// to the lowest-id exemplar; they are tracked as one pooled histogram so that
// a marginal gain only visits the candidate's graph neighbors.
class SelectionState {
 public:
  explicit SelectionState(const SelectionProblem& problem);

  const SelectionProblem& problem() const { return *problem_; }
  const std::vector<int>& selected() const { return selected_; }
  bool IsSelected(int i) const { return in_set_[i] != 0; }

  std::span<const double> best_sim_feature() const { return best_feature_; }
  std::span<const double> best_sim_spatial() const { return best_spatial_; }
  std::span<const int> per_class_selected() const { return per_class_selected_; }

  // Exemplar whose cluster contains j; -1 while A is empty.
  int ClusterOf(int j) const;
  // N_c^i for c = 0..C-1. `exemplar` must be in A.
  std::vector<int> ClusterCounts(int exemplar) const;
  int ClusterSize(int exemplar) const;

  // Term values for the current set, recomputed from the bookkeeping arrays.
  TermValues Terms() const;

  // Per-term F(A + {candidate}) - F(A). Throws kInvalidInput when the
  // candidate is out of range or already selected.
  TermValues Gains(int candidate) const;

  // Exact gains plus per-term upper bounds on the candidate's gain for this
  // set and every superset of it. The representative, spatial and balance
  // terms are submodular, so their bound is the current gain. The
  // discriminative and compactness terms are not; their bounds use the fact
  // that the cluster the candidate would take over only shrinks as A grows:
  //   discriminative <= max_c |new cluster, class c| / M - 1
  //   compact        <= h2(min(q, 1/2)) - 1,  q = |new cluster| / M
  // with h2 the binary entropy (natural log).
  struct CandidateGain {
    TermValues gains;
    TermValues bounds;
  };
  CandidateGain GainWithBound(int candidate) const;

  void Add(int candidate);

 private:
  struct Transfer;

  Transfer Plan(int candidate, bool record_moves) const;
  void CheckCandidate(int candidate) const;

  const SelectionProblem* problem_;
  std::vector<int> selected_;
  std::vector<char> in_set_;
  std::vector<double> best_feature_;
  std::vector<double> best_spatial_;
  // Owning exemplar of elements with positive best similarity, else -1.
  std::vector<int> owner_;
  // Per-exemplar class histogram of positively-owned members (empty for
  // non-exemplars).
  std::vector<std::vector<int>> member_counts_;
  std::vector<int> member_totals_;
  // Elements with zero similarity to all of A.
  std::vector<int> pool_counts_;
  int pool_total_;
  int min_exemplar_ = -1;
  std::vector<int> per_class_selected_;
};

// The individual terms. All are 0 for the empty set.
double TermRepresentative(const SelectionState& state);
double TermSpatial(const SelectionState& state);
double TermDiscriminative(const SelectionState& state);
double TermBalance(const SelectionState& state);
double TermCompact(const SelectionState& state);

double Evaluate(const SelectionState& state, const ObjectiveWeights& weights);

// Exact F(A + {candidate}) - F(A), computed from the incremental state.
double MarginalGain(const SelectionState& state, int candidate, const ObjectiveWeights& weights);

// Non-incremental recomputation of every term for an arbitrary set, used to
// verify the incremental path.
TermValues EvaluateFromScratch(const SelectionProblem& problem, std::span<const int> selected);

}  // namespace saco::submodular

#endif  // SACO_SUBMODULAR_OBJECTIVE_H_
