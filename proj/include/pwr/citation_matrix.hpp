#ifndef PWR_CITATION_MATRIX_HPP
#define PWR_CITATION_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace pwr {

using Index = Eigen::Index;

/**
 * Square, non-negative, labelled cited-citing matrix.
 *
 * Entry (i, j) counts citations from journal j (column, citing) to journal i
 * (row, cited). Rows are "power", columns are "weakness".
 *
 * Matrices up to kDenseLimit nodes are stored densely, larger ones in
 * row-major compressed form. All accessors behave identically for both
 * representations. Instances are immutable after construction.
 */
class CitationMatrix {
public:
  using Dense = Eigen::MatrixXd;
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  using Triplet = Eigen::Triplet<double>;

  static constexpr Index kDenseLimit = 1024;

  CitationMatrix() = default;
  CitationMatrix(std::vector<std::string> labels, Dense entries);
  CitationMatrix(std::vector<std::string> labels, Sparse entries);

  /// Duplicate coordinates are summed. Storage follows the kDenseLimit policy.
  static CitationMatrix from_triplets(std::vector<std::string> labels,
                                      const std::vector<Triplet>& triplets);

  Index size() const noexcept { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }
  std::optional<Index> index_of(std::string_view label) const;

  double operator()(Index row, Index col) const;
  bool is_sparse() const noexcept { return std::holds_alternative<Sparse>(entries_); }

  Dense to_dense() const;
  std::vector<Triplet> nonzeros() const; ///< row-major order
  double total() const;

  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;            ///< Z v
  Eigen::VectorXd multiply_transposed(const Eigen::VectorXd& v) const; ///< Z^T v

  /// Identity of the label sequence; used to check that node sets share a parent.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  const std::variant<Dense, Sparse>& storage() const noexcept { return entries_; }

  friend bool operator==(const CitationMatrix& a, const CitationMatrix& b);

private:
  void index_labels();
  void check_entries() const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> index_;
  std::variant<Dense, Sparse> entries_{Dense(0, 0)};
  std::uint64_t fingerprint_ = 0;
};

} // namespace pwr

#endif // PWR_CITATION_MATRIX_HPP
