#ifndef PWR_GRAPH_HPP
#define PWR_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pwr/citation_matrix.hpp"

namespace pwr {

/// Ordered subset of the nodes of one parent matrix. Indices are validated
/// against the parent on construction and may not repeat.
class NodeSet {
public:
  NodeSet() = default;
  NodeSet(const CitationMatrix& parent, std::vector<Index> indices);

  static NodeSet all(const CitationMatrix& parent);
  static NodeSet from_labels(const CitationMatrix& parent, std::span<const std::string> labels);

  std::span<const Index> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(Index i) const;

  Index parent_size() const noexcept { return parent_size_; }
  std::uint64_t parent_fingerprint() const noexcept { return parent_fingerprint_; }

  std::vector<std::string> labels(const CitationMatrix& parent) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

private:
  Index parent_size_ = 0;
  std::uint64_t parent_fingerprint_ = 0;
  std::vector<Index> indices_;
};

/// Strong components of the citing -> cited arc graph.
/// Components are ordered by their smallest node; members ascend.
struct SccResult {
  std::vector<NodeSet> components;
  std::vector<Index> component_of;
};

CitationMatrix transpose(const CitationMatrix& z);

/// Removes self-citations.
CitationMatrix zero_diagonal(const CitationMatrix& z);

/// Times cited within the set.
Eigen::VectorXd row_sums(const CitationMatrix& z);

/// References given within the set.
Eigen::VectorXd column_sums(const CitationMatrix& z);

Eigen::VectorXd matvec(const CitationMatrix& z, const Eigen::VectorXd& v);

/// Restriction of z to `nodes`, in the order given by `nodes`.
CitationMatrix extract_subgraph(const CitationMatrix& z, const NodeSet& nodes);

/// Arc j -> i whenever z(i, j) > 0 and i != j (Tarjan, iterative).
SccResult strongly_connected_components(const CitationMatrix& z);

/// Subgraph induced by the largest strong component; ties go to the component
/// holding the smallest node index.
CitationMatrix largest_strong_component(const CitationMatrix& z);

/// Explicit z^k by repeated dense multiplication. Intended for small inputs
/// only (test oracle). Throws std::overflow_error when an entry leaves the
/// finite double range.
CitationMatrix matrix_power_oracle(const CitationMatrix& z, int k);

} // namespace pwr

#endif // PWR_GRAPH_HPP
