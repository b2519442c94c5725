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

#include "saco/submodular/objective.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "saco/core/error.h"

namespace saco::submodular {
namespace {

// -p log p for a cluster of n out of m elements; 0 log 0 := 0.
double EntropyContribution(int n, int m) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(n) / m;
  return -p * std::log(p);
}

int MaxCount(std::span<const int> counts) {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

}  // namespace

void ObjectiveWeights::Validate() const {
  for (double w : {lambda_s, lambda_d, lambda_b, lambda_c}) {
    Require(std::isfinite(w) && w >= 0.0, ErrorCode::kInvalidConfig,
            "objective weights must be finite and non-negative");
  }
}

SelectionProblem::SelectionProblem(AffinityGraph feature_graph, AffinityGraph spatial_graph,
                                   std::vector<int> labels, int num_classes)
    : feature_graph_(std::move(feature_graph)),
      spatial_graph_(std::move(spatial_graph)),
      labels_(std::move(labels)),
      num_classes_(num_classes) {
  const int m = static_cast<int>(labels_.size());
  Require(m >= 1, ErrorCode::kInvalidInput, "selection needs a non-empty ground set");
  Require(feature_graph_.size() == m && spatial_graph_.size() == m, ErrorCode::kInvalidInput,
          "graph sizes (" + std::to_string(feature_graph_.size()) + ", " +
              std::to_string(spatial_graph_.size()) + ") do not match " + std::to_string(m) +
              " labels");
  Require(num_classes_ >= 1, ErrorCode::kInvalidInput, "need at least one class");
  for (int label : labels_) {
    Require(label >= 0 && label < num_classes_, ErrorCode::kInvalidInput,
            "label " + std::to_string(label) + " outside [0, " + std::to_string(num_classes_) +
                ")");
  }
}

SelectionProblem SelectionProblem::FromPatches(std::span<const Patch> patches,
                                               AffinityGraph feature_graph,
                                               AffinityGraph spatial_graph) {
  std::vector<int> labels;
  labels.reserve(patches.size());
  for (const Patch& p : patches) labels.push_back(p.label);
  const int classes = CountClasses(patches);
  return SelectionProblem(std::move(feature_graph), std::move(spatial_graph), std::move(labels),
                          classes);
}

// Elements that move into the candidate's cluster, aggregated by the cluster
// they leave, plus the resulting term changes.
struct SelectionState::Transfer {
  struct Source {
    int exemplar;  // -1 = zero-similarity pool
    std::vector<int> removed;
    int total = 0;
  };
  TermValues gains;
  TermValues bounds;
  std::vector<Source> sources;
  std::vector<int> joined;
  int joined_total = 0;
  std::vector<int> moved;  // element ids; only filled when recording
};

SelectionState::SelectionState(const SelectionProblem& problem)
    : problem_(&problem),
      in_set_(problem.size(), 0),
      best_feature_(problem.size(), 0.0),
      best_spatial_(problem.size(), 0.0),
      owner_(problem.size(), -1),
      member_counts_(problem.size()),
      member_totals_(problem.size(), 0),
      pool_counts_(problem.num_classes(), 0),
      pool_total_(problem.size()),
      per_class_selected_(problem.num_classes(), 0) {
  for (int label : problem.labels()) ++pool_counts_[label];
}

void SelectionState::CheckCandidate(int candidate) const {
  Require(candidate >= 0 && candidate < problem_->size(), ErrorCode::kInvalidInput,
          "candidate " + std::to_string(candidate) + " outside the ground set");
  Require(!IsSelected(candidate), ErrorCode::kInvalidInput,
          "candidate " + std::to_string(candidate) + " is already selected");
}

int SelectionState::ClusterOf(int j) const {
  return owner_[j] >= 0 ? owner_[j] : min_exemplar_;
}

std::vector<int> SelectionState::ClusterCounts(int exemplar) const {
  Require(exemplar >= 0 && exemplar < problem_->size() && IsSelected(exemplar),
          ErrorCode::kInvalidInput, "cluster queried for a non-exemplar");
  std::vector<int> counts = member_counts_[exemplar];
  if (exemplar == min_exemplar_) {
    for (int c = 0; c < problem_->num_classes(); ++c) counts[c] += pool_counts_[c];
  }
  return counts;
}

int SelectionState::ClusterSize(int exemplar) const {
  return member_totals_[exemplar] + (exemplar == min_exemplar_ ? pool_total_ : 0);
}

SelectionState::Transfer SelectionState::Plan(int candidate, bool record_moves) const {
  const SelectionProblem& problem = *problem_;
  const int m = problem.size();
  const int classes = problem.num_classes();
  const auto& labels = problem.labels();

  Transfer plan;
  plan.joined.assign(classes, 0);

  auto source_for = [&](int exemplar) -> Transfer::Source& {
    for (auto& s : plan.sources) {
      if (s.exemplar == exemplar) return s;
    }
    plan.sources.push_back({exemplar, std::vector<int>(classes, 0), 0});
    return plan.sources.back();
  };

  auto visit_feature = [&](int j, double s) {
    if (s > best_feature_[j]) plan.gains.representative += s - best_feature_[j];
    if (s <= 0.0) return;
    const int from = owner_[j];
    const bool moves = from < 0 || s > best_feature_[j] ||
                       (s == best_feature_[j] && candidate < from);
    if (!moves) return;
    auto& source = source_for(from);
    ++source.removed[labels[j]];
    ++source.total;
    ++plan.joined[labels[j]];
    ++plan.joined_total;
    if (record_moves) plan.moved.push_back(j);
  };
  const AffinityGraph& feature = problem.feature_graph();
  visit_feature(candidate, feature.self_similarity());
  for (const auto& n : feature.neighbors(candidate)) visit_feature(n.index, n.value);

  const AffinityGraph& spatial = problem.spatial_graph();
  plan.gains.spatial = std::max(0.0, spatial.self_similarity() - best_spatial_[candidate]);
  for (const auto& n : spatial.neighbors(candidate)) {
    plan.gains.spatial += std::max(0.0, n.value - best_spatial_[n.index]);
  }

  // Pool after the transfer; it belongs to the lowest-id exemplar.
  std::vector<int> pool_after = pool_counts_;
  int pool_after_total = pool_total_;
  for (const auto& s : plan.sources) {
    if (s.exemplar >= 0) continue;
    for (int c = 0; c < classes; ++c) pool_after[c] -= s.removed[c];
    pool_after_total -= s.total;
  }
  const int new_min =
      (min_exemplar_ < 0 || candidate < min_exemplar_) ? candidate : min_exemplar_;

  std::vector<int> affected;
  for (const auto& s : plan.sources) {
    if (s.exemplar >= 0) affected.push_back(s.exemplar);
  }
  if (min_exemplar_ >= 0 &&
      std::find(affected.begin(), affected.end(), min_exemplar_) == affected.end()) {
    affected.push_back(min_exemplar_);
  }

  std::int64_t purity_before = 0;
  std::int64_t purity_after = 0;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  std::vector<int> counts(classes);
  for (int exemplar : affected) {
    const bool was_min = exemplar == min_exemplar_;
    const bool is_min = exemplar == new_min;
    int before_total = member_totals_[exemplar] + (was_min ? pool_total_ : 0);
    int after_total = member_totals_[exemplar] + (is_min ? pool_after_total : 0);
    for (int c = 0; c < classes; ++c) counts[c] = member_counts_[exemplar][c] + (was_min ? pool_counts_[c] : 0);
    purity_before += MaxCount(counts);
    entropy_before += EntropyContribution(before_total, m);

    for (int c = 0; c < classes; ++c) counts[c] = member_counts_[exemplar][c] + (is_min ? pool_after[c] : 0);
    for (const auto& s : plan.sources) {
      if (s.exemplar != exemplar) continue;
      for (int c = 0; c < classes; ++c) counts[c] -= s.removed[c];
      after_total -= s.total;
    }
    purity_after += MaxCount(counts);
    entropy_after += EntropyContribution(after_total, m);
  }
  int new_cluster_max = 0;
  int new_cluster_size = 0;
  {
    const bool is_min = candidate == new_min;
    new_cluster_size = plan.joined_total + (is_min ? pool_after_total : 0);
    for (int c = 0; c < classes; ++c) counts[c] = plan.joined[c] + (is_min ? pool_after[c] : 0);
    new_cluster_max = MaxCount(counts);
    purity_after += new_cluster_max;
    entropy_after += EntropyContribution(new_cluster_size, m);
  }

  plan.gains.discriminative = static_cast<double>(purity_after - purity_before) / m - 1.0;
  plan.gains.compact = (entropy_after - entropy_before) - 1.0;
  const int same_class = per_class_selected_[labels[candidate]];
  plan.gains.balance = std::log(same_class + 2.0) - std::log(same_class + 1.0);

  plan.bounds = plan.gains;
  plan.bounds.discriminative =
      std::max(plan.gains.discriminative, static_cast<double>(new_cluster_max) / m - 1.0);
  // h2 peaks at q = 1/2 and q can still shrink towards it later.
  const double split_entropy =
      2 * new_cluster_size >= m
          ? std::log(2.0)
          : EntropyContribution(new_cluster_size, m) +
                EntropyContribution(m - new_cluster_size, m);
  plan.bounds.compact = std::max(plan.gains.compact, split_entropy - 1.0);
  return plan;
}

TermValues SelectionState::Gains(int candidate) const {
  CheckCandidate(candidate);
  return Plan(candidate, false).gains;
}

SelectionState::CandidateGain SelectionState::GainWithBound(int candidate) const {
  CheckCandidate(candidate);
  const Transfer plan = Plan(candidate, false);
  return {plan.gains, plan.bounds};
}

void SelectionState::Add(int candidate) {
  CheckCandidate(candidate);
  const Transfer plan = Plan(candidate, true);
  const SelectionProblem& problem = *problem_;
  const auto& labels = problem.labels();
  const int classes = problem.num_classes();

  member_counts_[candidate].assign(classes, 0);
  for (int j : plan.moved) {
    const int from = owner_[j];
    if (from >= 0) {
      --member_counts_[from][labels[j]];
      --member_totals_[from];
    } else {
      --pool_counts_[labels[j]];
      --pool_total_;
    }
    owner_[j] = candidate;
    ++member_counts_[candidate][labels[j]];
    ++member_totals_[candidate];
  }

  const AffinityGraph& feature = problem.feature_graph();
  best_feature_[candidate] = std::max(best_feature_[candidate], feature.self_similarity());
  for (const auto& n : feature.neighbors(candidate)) {
    best_feature_[n.index] = std::max(best_feature_[n.index], n.value);
  }
  const AffinityGraph& spatial = problem.spatial_graph();
  best_spatial_[candidate] = std::max(best_spatial_[candidate], spatial.self_similarity());
  for (const auto& n : spatial.neighbors(candidate)) {
    best_spatial_[n.index] = std::max(best_spatial_[n.index], n.value);
  }

  if (min_exemplar_ < 0 || candidate < min_exemplar_) min_exemplar_ = candidate;
  in_set_[candidate] = 1;
  selected_.push_back(candidate);
  ++per_class_selected_[labels[candidate]];
}

TermValues SelectionState::Terms() const {
  TermValues terms;
  if (selected_.empty()) return terms;
  const int m = problem_->size();
  for (int j = 0; j < m; ++j) {
    terms.representative += best_feature_[j];
    terms.spatial += best_spatial_[j];
  }
  std::int64_t purity = 0;
  double entropy = 0.0;
  for (int exemplar : selected_) {
    purity += MaxCount(ClusterCounts(exemplar));
    entropy += EntropyContribution(ClusterSize(exemplar), m);
  }
  const double size = static_cast<double>(selected_.size());
  terms.discriminative = static_cast<double>(purity) / m - size;
  terms.compact = entropy - size;
  for (int count : per_class_selected_) terms.balance += std::log(count + 1.0);
  return terms;
}

double TermRepresentative(const SelectionState& state) { return state.Terms().representative; }
double TermSpatial(const SelectionState& state) { return state.Terms().spatial; }
double TermDiscriminative(const SelectionState& state) { return state.Terms().discriminative; }
double TermBalance(const SelectionState& state) { return state.Terms().balance; }
double TermCompact(const SelectionState& state) { return state.Terms().compact; }

double Evaluate(const SelectionState& state, const ObjectiveWeights& weights) {
  return state.Terms().Weighted(weights);
}

double MarginalGain(const SelectionState& state, int candidate, const ObjectiveWeights& weights) {
  return state.Gains(candidate).Weighted(weights);
}

TermValues EvaluateFromScratch(const SelectionProblem& problem, std::span<const int> selected) {
  TermValues terms;
  if (selected.empty()) return terms;
  const int m = problem.size();
  const int classes = problem.num_classes();
  std::vector<int> exemplars(selected.begin(), selected.end());
  std::sort(exemplars.begin(), exemplars.end());
  Require(std::adjacent_find(exemplars.begin(), exemplars.end()) == exemplars.end(),
          ErrorCode::kInvalidInput, "selected set contains duplicates");

  auto similarity = [](const AffinityGraph& g, int i, int j) {
    return i == j ? g.self_similarity() : g.value(i, j);
  };

  std::vector<std::vector<int>> counts(exemplars.size(), std::vector<int>(classes, 0));
  std::vector<int> sizes(exemplars.size(), 0);
  for (int j = 0; j < m; ++j) {
    double best = -1.0;
    std::size_t owner = 0;
    double best_spatial = 0.0;
    for (std::size_t k = 0; k < exemplars.size(); ++k) {
      const double s = similarity(problem.feature_graph(), exemplars[k], j);
      if (s > best) {
        best = s;
        owner = k;
      }
      best_spatial = std::max(best_spatial, similarity(problem.spatial_graph(), exemplars[k], j));
    }
    terms.representative += best;
    terms.spatial += best_spatial;
    ++counts[owner][problem.labels()[j]];
    ++sizes[owner];
  }
  std::int64_t purity = 0;
  double entropy = 0.0;
  for (std::size_t k = 0; k < exemplars.size(); ++k) {
    purity += MaxCount(counts[k]);
    entropy += EntropyContribution(sizes[k], m);
  }
  const double size = static_cast<double>(exemplars.size());
  terms.discriminative = static_cast<double>(purity) / m - size;
  terms.compact = entropy - size;
  std::vector<int> per_class(classes, 0);
  for (int i : exemplars) ++per_class[problem.labels()[i]];
  for (int count : per_class) terms.balance += std::log(count + 1.0);
  return terms;
}

}  // namespace saco::submodular
