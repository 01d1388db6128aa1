#ifndef PWR_DECOMPOSITION_HPP
#define PWR_DECOMPOSITION_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pwr/citation_matrix.hpp"
#include "pwr/graph.hpp"

namespace pwr {

/// Symmetric similarity in [0, 1]; a node with an all-zero citing column has
/// similarity 0 to everything, itself included.
struct SimilarityMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;

  Index size() const { return values.rows(); }
};

enum class DiagonalPolicy { include, exclude };

SimilarityMatrix citing_cosine_matrix(const CitationMatrix& z,
                                      DiagonalPolicy diagonal = DiagonalPolicy::include);

struct WeightedEdge {
  Index u;
  Index v;
  double weight;
};

/// Undirected weighted simple graph (no self-loops, no parallel edges).
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> labels, std::vector<WeightedEdge> edges);

  Index size() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  /// Neighbours of u with edge weights, ascending by neighbour.
  const std::vector<std::pair<Index, double>>& neighbours(Index u) const {
    return adjacency_.at(static_cast<std::size_t>(u));
  }
  double degree(Index u) const { return degree_.at(static_cast<std::size_t>(u)); }
  double total_weight() const { return total_weight_; }

private:
  std::vector<std::string> labels_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<std::pair<Index, double>>> adjacency_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
};

/// Edge {i, j} with weight s_ij for every pair with s_ij > tau (strict).
WeightedGraph threshold_graph(const SimilarityMatrix& s, double tau);

struct Partition {
  std::vector<Index> community_of; ///< ids contiguous from 0, numbered by first member
  double q = 0.0;
  /// Modularity after each aggregation level; non-decreasing.
  std::vector<double> level_modularity;

  Index community_count() const;
  std::vector<std::vector<Index>> communities() const;
};

/// Weighted modularity with resolution gamma:
/// Q = sum_c [ in_c / 2m - gamma (tot_c / 2m)^2 ].
/// Throws std::domain_error on a graph with no edge weight.
double modularity(const WeightedGraph& g, std::span<const Index> community_of,
                  double resolution = 1.0);

/// Two-phase Louvain (local moving + aggregation) with ascending node order,
/// ties resolved toward the lowest community id, and a closing pass that
/// merges communities whenever doing so does not lower modularity.
Partition louvain_partition(const WeightedGraph& g, double resolution = 1.0);

/// Journals j with z(target, j) >= min_count, i.e. that cite `target` at least
/// `min_count` times. Throws std::invalid_argument on an unknown label.
NodeSet citing_threshold_subset(const CitationMatrix& z, std::string_view target,
                                double min_count);

/// Union in ascending index order. Both sets must share a parent matrix.
NodeSet union_subset(const CitationMatrix& parent, const NodeSet& a, const NodeSet& b);

} // namespace pwr

#endif // PWR_DECOMPOSITION_HPP
