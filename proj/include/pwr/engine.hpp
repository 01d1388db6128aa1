#ifndef PWR_ENGINE_HPP
#define PWR_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pwr/citation_matrix.hpp"

namespace pwr {

enum class SelfCitations { include, exclude };

/// What r_i(k) becomes when w_i(k) = 0.
enum class ZeroDivision { zero, infinite, error };

/// Stand-in for an infinite ratio under ZeroDivision::infinite (Pajek's
/// missing value). Always accompanied by an `undefined` flag in the trace.
inline constexpr double kUndefinedRatio = 999999999.0;

struct PwrOptions {
  int k_max = 20;
  double tol = 1e-6;
  SelfCitations self_citations = SelfCitations::include;
  ZeroDivision zero_division = ZeroDivision::zero;
  bool normalize_each_iteration = true;

  void validate() const;
};

/// Iterates v <- Z v from a uniform start. With normalization on, every
/// vector has unit sum and `scales[k-1]` is the sum divided out at step k;
/// with it off the start is the ones vector and vectors[k-1] = Z^k 1.
struct IterationTrace {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> scales;
  /// Some iterate was identically zero (empty or nilpotent matrix).
  bool degenerate = false;
};

/// Nodes whose in-set citing or cited total is zero.
struct DanglingNodes {
  std::vector<Index> cited_only;  ///< cited, cite nothing: inflated ratios
  std::vector<Index> citing_only; ///< cite, never cited
  std::vector<Index> isolated;

  bool empty() const { return cited_only.empty() && citing_only.empty() && isolated.empty(); }
};

struct PwrTrace {
  std::vector<std::string> labels;
  /// Index k-1 holds the vectors for iteration k.
  std::vector<Eigen::VectorXd> power;
  std::vector<Eigen::VectorXd> weakness;
  std::vector<Eigen::VectorXd> ratio;
  /// Entries produced by the zero-division policy rather than by division.
  std::vector<Eigen::Array<bool, Eigen::Dynamic, 1>> undefined;
  std::vector<double> power_scale;
  std::vector<double> weakness_scale;
  ZeroDivision zero_division = ZeroDivision::zero;
  bool degenerate = false;
  DanglingNodes dangling;

  int k_max() const { return static_cast<int>(ratio.size()); }
  Index size() const { return static_cast<Index>(labels.size()); }
  const Eigen::VectorXd& ratio_at(int k) const { return ratio.at(static_cast<std::size_t>(k - 1)); }
  const Eigen::VectorXd& power_at(int k) const { return power.at(static_cast<std::size_t>(k - 1)); }
  const Eigen::VectorXd& weakness_at(int k) const {
    return weakness.at(static_cast<std::size_t>(k - 1));
  }
};

struct ConvergenceReport {
  double tol = 0.0;
  int k_max = 0;
  /// deltas[k-2] = max_i |r_i(k) - r_i(k-1)| over nodes defined at both k.
  std::vector<double> deltas;
  bool converged = false;
  std::optional<int> k_converged;
  /// Nodes excluded from the deltas because some ratio was undefined.
  std::vector<Index> flagged;

  double delta_at(int k) const { return deltas.at(static_cast<std::size_t>(k - 2)); }
  /// Short human-readable reading of the convergence speed.
  std::string homogeneity_hint() const;
};

struct ConvergedPwr {
  Eigen::VectorXd ratio;
  int k = 0; ///< iteration the ratio was taken from
  ConvergenceReport report;
};

IterationTrace power_vector_trace(const CitationMatrix& z, const PwrOptions& opts);

/// Power trace of the transposed matrix: column sums of Z^k up to scaling.
IterationTrace weakness_vector_trace(const CitationMatrix& z, const PwrOptions& opts);

DanglingNodes find_dangling_nodes(const CitationMatrix& z);

/// Full trace with the self-citation and zero-division policies applied.
/// Throws ZeroDivisionError under ZeroDivision::error.
PwrTrace pwr_trace(const CitationMatrix& z, const PwrOptions& opts = {});

ConvergenceReport convergence_report(const PwrTrace& trace, double tol);

ConvergedPwr converged_pwr(const CitationMatrix& z, const PwrOptions& opts = {});

} // namespace pwr

#endif // PWR_ENGINE_HPP
