#include "pwr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pwr/errors.hpp"
#include "pwr/graph.hpp"

namespace pwr {

void PwrOptions::validate() const {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tol must be positive");
}

IterationTrace power_vector_trace(const CitationMatrix& z, const PwrOptions& opts) {
  opts.validate();
  const Index n = z.size();
  if (n < 1) throw std::invalid_argument("power iteration needs at least one node");

  IterationTrace trace;
  trace.vectors.reserve(static_cast<std::size_t>(opts.k_max));
  trace.scales.reserve(static_cast<std::size_t>(opts.k_max));

  Eigen::VectorXd v = opts.normalize_each_iteration
                          ? Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n))
                          : Eigen::VectorXd::Ones(n);
  for (int k = 1; k <= opts.k_max; ++k) {
    Eigen::VectorXd u = z.multiply(v);
    double scale = 1.0;
    const double sum = u.sum();
    if (sum == 0.0) {
      trace.degenerate = true;
    } else if (opts.normalize_each_iteration) {
      scale = sum;
      u /= scale;
    }
    if (!u.allFinite()) {
      throw std::overflow_error("power iteration overflows at k=" + std::to_string(k) +
                                "; enable per-iteration normalization");
    }
    trace.scales.push_back(scale);
    trace.vectors.push_back(u);
    v = std::move(u);
  }
  return trace;
}

IterationTrace weakness_vector_trace(const CitationMatrix& z, const PwrOptions& opts) {
  return power_vector_trace(transpose(z), opts);
}

DanglingNodes find_dangling_nodes(const CitationMatrix& z) {
  const Eigen::VectorXd cited = row_sums(z);
  const Eigen::VectorXd citing = column_sums(z);
  DanglingNodes out;
  for (Index i = 0; i < z.size(); ++i) {
    const bool is_cited = cited[i] > 0.0;
    const bool is_citing = citing[i] > 0.0;
    if (is_cited && !is_citing) out.cited_only.push_back(i);
    if (!is_cited && is_citing) out.citing_only.push_back(i);
    if (!is_cited && !is_citing) out.isolated.push_back(i);
  }
  return out;
}

PwrTrace pwr_trace(const CitationMatrix& z, const PwrOptions& opts) {
  opts.validate();
  const CitationMatrix effective =
      opts.self_citations == SelfCitations::exclude ? zero_diagonal(z) : z;

  IterationTrace power = power_vector_trace(effective, opts);
  IterationTrace weakness = weakness_vector_trace(effective, opts);

  PwrTrace trace;
  trace.labels = z.labels();
  trace.zero_division = opts.zero_division;
  trace.degenerate = power.degenerate || weakness.degenerate;
  trace.dangling = find_dangling_nodes(effective);

  const Index n = z.size();
  for (int k = 1; k <= opts.k_max; ++k) {
    const auto& p = power.vectors[static_cast<std::size_t>(k - 1)];
    const auto& w = weakness.vectors[static_cast<std::size_t>(k - 1)];
    Eigen::VectorXd r(n);
    Eigen::Array<bool, Eigen::Dynamic, 1> undefined = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, false);
    for (Index i = 0; i < n; ++i) {
      if (w[i] > 0.0) {
        r[i] = p[i] / w[i];
        continue;
      }
      switch (opts.zero_division) {
      case ZeroDivision::zero:
        r[i] = 0.0;
        break;
      case ZeroDivision::infinite:
        r[i] = kUndefinedRatio;
        break;
      case ZeroDivision::error:
        throw ZeroDivisionError(z.label(i), k);
      }
      undefined[i] = true;
    }
    trace.ratio.push_back(std::move(r));
    trace.undefined.push_back(std::move(undefined));
  }
  trace.power = std::move(power.vectors);
  trace.weakness = std::move(weakness.vectors);
  trace.power_scale = std::move(power.scales);
  trace.weakness_scale = std::move(weakness.scales);
  return trace;
}

ConvergenceReport convergence_report(const PwrTrace& trace, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (trace.k_max() < 2) throw std::invalid_argument("convergence needs a trace with k_max >= 2");

  ConvergenceReport report;
  report.tol = tol;
  report.k_max = trace.k_max();

  const Index n = trace.size();
  std::vector<bool> flagged(static_cast<std::size_t>(n), false);
  for (const auto& mask : trace.undefined)
    for (Index i = 0; i < n; ++i)
      if (mask[i]) flagged[static_cast<std::size_t>(i)] = true;
  for (Index i = 0; i < n; ++i)
    if (flagged[static_cast<std::size_t>(i)]) report.flagged.push_back(i);

  for (int k = 2; k <= trace.k_max(); ++k) {
    const auto& prev = trace.ratio_at(k - 1);
    const auto& curr = trace.ratio_at(k);
    const auto& prev_undef = trace.undefined[static_cast<std::size_t>(k - 2)];
    const auto& curr_undef = trace.undefined[static_cast<std::size_t>(k - 1)];
    double delta = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (prev_undef[i] || curr_undef[i]) continue;
      delta = std::max(delta, std::abs(curr[i] - prev[i]));
    }
    report.deltas.push_back(delta);
    if (!report.k_converged && delta <= tol) report.k_converged = k;
  }
  report.converged = report.k_converged.has_value();
  return report;
}

std::string ConvergenceReport::homogeneity_hint() const {
  std::ostringstream out;
  if (converged) {
    out << "converged after " << *k_converged << " iterations (k_max " << k_max << ")";
  } else {
    out << "not converged within " << k_max
        << " iterations; oscillation or slow drift indicates a heterogeneous set";
  }
  return out.str();
}

ConvergedPwr converged_pwr(const CitationMatrix& z, const PwrOptions& opts) {
  const PwrTrace trace = pwr_trace(z, opts);
  ConvergedPwr out;
  if (trace.k_max() < 2) {
    out.report.tol = opts.tol;
    out.report.k_max = trace.k_max();
    out.k = trace.k_max();
  } else {
    out.report = convergence_report(trace, opts.tol);
    out.k = out.report.k_converged.value_or(trace.k_max());
  }
  out.ratio = trace.ratio_at(out.k);
  return out;
}

} // namespace pwr
