#include "lrdag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lrdag {

namespace {
void check_same_size(const Dag& a, const Dag& b) {
  if (a.num_vertices() != b.num_vertices())
    throw std::invalid_argument("graphs have different vertex counts");
}
}  // namespace

int shd(const Dag& truth, const Dag& est) {
  check_same_size(truth, est);
  std::vector<Edge> pairs;
  for (const Dag* g : {&truth, &est})
    for (const Edge& e : g->edges()) pairs.push_back({std::min(e.tail, e.head), std::max(e.tail, e.head)});
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  int distance = 0;
  for (const Edge& p : pairs) {
    const bool same = truth.has_edge(p.tail, p.head) == est.has_edge(p.tail, p.head) &&
                      truth.has_edge(p.head, p.tail) == est.has_edge(p.head, p.tail);
    if (!same) ++distance;
  }
  return distance;
}

Rates tpr_fdr(const Dag& truth, const Dag& est, ReversalPolicy policy) {
  check_same_size(truth, est);
  std::size_t hits = 0;
  for (const Edge& e : est.edges()) {
    if (truth.has_edge(e.tail, e.head) ||
        (policy == ReversalPolicy::kUndirected && truth.has_edge(e.head, e.tail)))
      ++hits;
  }
  Rates out;
  if (truth.num_edges() > 0) out.tpr = static_cast<double>(hits) / truth.num_edges();
  if (est.num_edges() > 0)
    out.fdr = static_cast<double>(est.num_edges() - hits) / est.num_edges();
  return out;
}

MetricsReport evaluate(const Dag& truth, const Dag& est, double wall_time) {
  const Rates rates = tpr_fdr(truth, est);
  return {shd(truth, est), rates.tpr, rates.fdr, wall_time};
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> iqr_filter(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("iqr_filter of empty input");
  const double q1 = quantile(values, 0.25);
  const double q3 = quantile(values, 0.75);
  const double spread = q3 - q1;
  const double lo = q1 - 1.5 * spread;
  const double hi = q3 + 1.5 * spread;
  std::vector<double> kept;
  std::copy_if(values.begin(), values.end(), std::back_inserter(kept),
               [&](double x) { return x >= lo && x <= hi; });
  return kept;
}

FieldSummary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summary of empty input");
  FieldSummary s;
  s.count = static_cast<int>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / s.count;
  if (s.count > 1) {
    double ss = 0.0;
    for (double x : values) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / (s.count - 1));
  }
  s.median = quantile(values, 0.5);
  const std::vector<double> kept = iqr_filter(values);
  s.iqr_mean = std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(kept.size());
  return s;
}

AggregateReport aggregate(std::span<const MetricsReport> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate of no runs");
  std::vector<double> shd_v, tpr_v, fdr_v, time_v;
  for (const MetricsReport& r : runs) {
    shd_v.push_back(r.shd);
    tpr_v.push_back(r.tpr);
    fdr_v.push_back(r.fdr);
    time_v.push_back(r.wall_time);
  }
  return {summarize(shd_v), summarize(tpr_v), summarize(fdr_v), summarize(time_v)};
}

}  // namespace lrdag
