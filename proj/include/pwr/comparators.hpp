#ifndef PWR_COMPARATORS_HPP
#define PWR_COMPARATORS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pwr/citation_matrix.hpp"
#include "pwr/engine.hpp"

namespace pwr {

/// One value per journal, e.g. a PWR vector or externally published SJR scores.
struct MetricVector {
  std::string name;
  std::vector<std::string> labels;
  Eigen::VectorXd values;

  Index size() const { return values.size(); }
};

/// Times cited over references given; PWR at k = 1.
MetricVector citation_factor(const CitationMatrix& z, ZeroDivision policy = ZeroDivision::zero);

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-9;
  int max_iter = 1000;
};

/// Random surfer walking citing -> cited with probability proportional to
/// z(i, j); journals citing nothing spread their mass uniformly.
/// Throws ConvergenceError (carrying the last iterate) after max_iter steps.
MetricVector pagerank(const CitationMatrix& z, const PageRankOptions& opts = {});

struct HitsOptions {
  double tol = 1e-9;
  int max_iter = 1000;
};

struct HitsResult {
  MetricVector hubs;        ///< citing side
  MetricVector authorities; ///< cited side
  int iterations = 0;
};

/// Mutual reinforcement a = Z h, h = Z^T a with unit-sum scaling each step.
HitsResult hits(const CitationMatrix& z, const HitsOptions& opts = {});

/// Ranks starting at 1; tied values share the average of their positions.
template <typename Derived>
Eigen::VectorXd average_ranks(const Eigen::MatrixBase<Derived>& x) {
  const Index n = x.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&x](Index a, Index b) { return x(a) < x(b); });
  Eigen::VectorXd ranks(n);
  for (Index start = 0; start < n;) {
    Index end = start + 1;
    while (end < n && x(order[static_cast<std::size_t>(end)]) == x(order[static_cast<std::size_t>(start)])) ++end;
    const double rank = 0.5 * static_cast<double>(start + end - 1) + 1.0;
    for (Index k = start; k < end; ++k) ranks(order[static_cast<std::size_t>(k)]) = rank;
    start = end;
  }
  return ranks;
}

/// Sample Pearson correlation. Throws std::domain_error on zero variance.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation of vectors of unequal length");
  if (x.size() < 2) throw std::invalid_argument("correlation needs at least two observations");
  const Eigen::ArrayXd dx = x.derived().array().template cast<double>() - x.template cast<double>().mean();
  const Eigen::ArrayXd dy = y.derived().array().template cast<double>() - y.template cast<double>().mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("correlation undefined for a constant vector");
  const double r = (dx * dy).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

/// Pearson correlation of average ranks.
template <typename DerivedX, typename DerivedY>
double spearman(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  return pearson(average_ranks(x), average_ranks(y));
}

/// Reorders `m` to follow `labels`. Throws LabelMismatchError when the label
/// sets differ.
MetricVector align_to(const MetricVector& m, std::span<const std::string> labels);

/// Label-aligned correlations.
double pearson(const MetricVector& x, const MetricVector& y);
double spearman(const MetricVector& x, const MetricVector& y);

struct RankingComparison {
  std::string x_name;
  std::string y_name;
  std::vector<std::string> labels;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double pearson = 0.0;
  double spearman = 0.0;
  Index n = 0;
};

RankingComparison compare(const MetricVector& x, const MetricVector& y);

struct ComparisonTable {
  std::vector<std::string> names;
  std::vector<std::vector<RankingComparison>> pairs; ///< pairs[a][b]

  Eigen::MatrixXd pearson_matrix() const;
  Eigen::MatrixXd spearman_matrix() const;
};

/// Pairwise comparisons, all vectors aligned to the first one's label order.
ComparisonTable compare_rankings(std::span<const MetricVector> metrics);

} // namespace pwr

#endif // PWR_COMPARATORS_HPP
