#pragma once

#include <span>
#include <vector>

#include "lrdag/graph.hpp"

namespace lrdag {

/// Structural Hamming distance: for every unordered vertex pair whose
/// connection differs between the graphs, one addition, deletion or
/// reversal. A reversed edge counts once. Throws on a vertex-count mismatch.
int shd(const Dag& truth, const Dag& est);

/// How a predicted edge with the right endpoints but the wrong direction is
/// scored by tpr_fdr.
enum class ReversalPolicy {
  kStrict,      ///< a miss for TPR and a false discovery for FDR
  kUndirected,  ///< counted as a hit
};

struct Rates {
  double tpr = 0.0;  ///< hits / |truth edges|, 0 when truth is edgeless
  double fdr = 0.0;  ///< (|est edges| - hits) / |est edges|, 0 when est is edgeless
};

Rates tpr_fdr(const Dag& truth, const Dag& est, ReversalPolicy policy = ReversalPolicy::kStrict);

struct MetricsReport {
  int shd = 0;
  double tpr = 0.0;
  double fdr = 0.0;
  double wall_time = 0.0;
};

MetricsReport evaluate(const Dag& truth, const Dag& est, double wall_time = 0.0);

/// Keeps values inside [Q1 - 1.5 IQR, Q3 + 1.5 IQR], in input order.
/// Quartiles interpolate linearly between order statistics at q (n - 1).
/// Throws std::invalid_argument on empty input.
std::vector<double> iqr_filter(std::span<const double> values);

/// Linear-interpolation quantile, q in [0, 1].
double quantile(std::span<const double> values, double q);

struct FieldSummary {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for a single value
  double median = 0.0;
  double iqr_mean = 0.0;
  int count = 0;
};

FieldSummary summarize(std::span<const double> values);

struct AggregateReport {
  FieldSummary shd;
  FieldSummary tpr;
  FieldSummary fdr;
  FieldSummary wall_time;
};

AggregateReport aggregate(std::span<const MetricsReport> runs);

}  // namespace lrdag
