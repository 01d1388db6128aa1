#include "pwr/comparators.hpp"

#include <unordered_map>

#include "pwr/errors.hpp"
#include "pwr/graph.hpp"

namespace pwr {

MetricVector citation_factor(const CitationMatrix& z, ZeroDivision policy) {
  PwrOptions opts;
  opts.k_max = 1;
  opts.zero_division = policy;
  const PwrTrace trace = pwr_trace(z, opts);
  return {"cf", z.labels(), trace.ratio_at(1)};
}

MetricVector pagerank(const CitationMatrix& z, const PageRankOptions& opts) {
  if (!(opts.damping > 0.0 && opts.damping < 1.0)) throw std::invalid_argument("damping must lie in (0, 1)");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  const Index n = z.size();
  if (n < 1) throw std::invalid_argument("PageRank needs at least one node");

  const Eigen::VectorXd out_weight = column_sums(z);
  const double uniform = 1.0 / static_cast<double>(n);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, uniform);
  Eigen::VectorXd share(n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    double dangling = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (out_weight[j] > 0.0) {
        share[j] = x[j] / out_weight[j];
      } else {
        share[j] = 0.0;
        dangling += x[j];
      }
    }
    Eigen::VectorXd next = opts.damping * z.multiply(share);
    next.array() += (opts.damping * dangling + (1.0 - opts.damping)) * uniform;
    next /= next.sum();
    const double change = (next - x).lpNorm<1>();
    x = std::move(next);
    if (change <= opts.tol) return {"pagerank", z.labels(), x};
  }
  throw ConvergenceError("PageRank did not converge within " + std::to_string(opts.max_iter) +
                             " iterations",
                         x, opts.max_iter);
}

HitsResult hits(const CitationMatrix& z, const HitsOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  const Index n = z.size();
  if (n < 1 || z.total() <= 0.0) throw std::invalid_argument("HITS needs a matrix with at least one citation");

  const double uniform = 1.0 / static_cast<double>(n);
  Eigen::VectorXd hubs = Eigen::VectorXd::Constant(n, uniform);
  Eigen::VectorXd authorities = Eigen::VectorXd::Constant(n, uniform);
  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd a = z.multiply(hubs);
    a /= a.sum();
    Eigen::VectorXd h = z.multiply_transposed(a);
    h /= h.sum();
    const double change = std::max((a - authorities).lpNorm<1>(), (h - hubs).lpNorm<1>());
    authorities = std::move(a);
    hubs = std::move(h);
    if (change <= opts.tol) {
      return {{"hits-hub", z.labels(), hubs}, {"hits-authority", z.labels(), authorities}, it};
    }
  }
  throw ConvergenceError("HITS did not converge within " + std::to_string(opts.max_iter) +
                             " iterations",
                         authorities, opts.max_iter);
}

MetricVector align_to(const MetricVector& m, std::span<const std::string> labels) {
  if (static_cast<Index>(m.labels.size()) != m.values.size()) {
    throw std::invalid_argument("metric '" + m.name + "' has mismatched labels and values");
  }
  std::unordered_map<std::string, Index> position;
  for (std::size_t i = 0; i < m.labels.size(); ++i) position.emplace(m.labels[i], static_cast<Index>(i));

  std::vector<std::string> unmatched;
  std::unordered_map<std::string, bool> wanted;
  for (const auto& label : labels) {
    wanted.emplace(label, true);
    if (!position.count(label)) unmatched.push_back(label);
  }
  for (const auto& label : m.labels)
    if (!wanted.count(label)) unmatched.push_back(label);
  if (!unmatched.empty() || position.size() != m.labels.size()) {
    throw LabelMismatchError("metric '" + m.name + "'", std::move(unmatched));
  }

  MetricVector out{m.name, std::vector<std::string>(labels.begin(), labels.end()),
                   Eigen::VectorXd(static_cast<Index>(labels.size()))};
  for (std::size_t i = 0; i < labels.size(); ++i) out.values[static_cast<Index>(i)] = m.values[position.at(labels[i])];
  return out;
}

double pearson(const MetricVector& x, const MetricVector& y) {
  return pearson(x.values, align_to(y, x.labels).values);
}

double spearman(const MetricVector& x, const MetricVector& y) {
  return spearman(x.values, align_to(y, x.labels).values);
}

RankingComparison compare(const MetricVector& x, const MetricVector& y) {
  const MetricVector aligned = align_to(y, x.labels);
  RankingComparison out;
  out.x_name = x.name;
  out.y_name = y.name;
  out.labels = x.labels;
  out.x = x.values;
  out.y = aligned.values;
  out.n = x.size();
  out.pearson = pearson(out.x, out.y);
  out.spearman = spearman(out.x, out.y);
  return out;
}

Eigen::MatrixXd ComparisonTable::pearson_matrix() const {
  const auto n = static_cast<Index>(names.size());
  Eigen::MatrixXd out(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) out(a, b) = pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].pearson;
  return out;
}

Eigen::MatrixXd ComparisonTable::spearman_matrix() const {
  const auto n = static_cast<Index>(names.size());
  Eigen::MatrixXd out(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) out(a, b) = pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].spearman;
  return out;
}

ComparisonTable compare_rankings(std::span<const MetricVector> metrics) {
  ComparisonTable table;
  if (metrics.empty()) return table;
  const auto& labels = metrics.front().labels;
  std::vector<MetricVector> aligned;
  for (const auto& m : metrics) {
    aligned.push_back(align_to(m, labels));
    table.names.push_back(m.name);
  }
  table.pairs.resize(aligned.size());
  for (std::size_t a = 0; a < aligned.size(); ++a) {
    for (std::size_t b = 0; b < aligned.size(); ++b) {
      table.pairs[a].push_back(compare(aligned[a], aligned[b]));
    }
  }
  return table;
}

} // namespace pwr
