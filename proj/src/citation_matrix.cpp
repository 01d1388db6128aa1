#include "pwr/citation_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace pwr {

namespace {

std::uint64_t fnv1a(const std::vector<std::string>& labels) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (const auto& label : labels) {
    for (unsigned char c : label) mix(c);
    mix(0xff);
  }
  return h;
}

void check_value(double v, Index i, Index j) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("citation matrix entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") must be finite and non-negative");
  }
}

} // namespace

CitationMatrix::CitationMatrix(std::vector<std::string> labels, Dense entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  index_labels();
  check_entries();
}

CitationMatrix::CitationMatrix(std::vector<std::string> labels, Sparse entries)
    : labels_(std::move(labels)) {
  entries.makeCompressed();
  entries_ = std::move(entries);
  index_labels();
  check_entries();
}

CitationMatrix CitationMatrix::from_triplets(std::vector<std::string> labels,
                                             const std::vector<Triplet>& triplets) {
  const auto n = static_cast<Index>(labels.size());
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.row() >= n || t.col() < 0 || t.col() >= n) {
      throw std::out_of_range("triplet (" + std::to_string(t.row()) + ", " +
                              std::to_string(t.col()) + ") outside " + std::to_string(n) +
                              "x" + std::to_string(n) + " matrix");
    }
  }
  if (n <= kDenseLimit) {
    Dense dense = Dense::Zero(n, n);
    for (const auto& t : triplets) dense(t.row(), t.col()) += t.value();
    return CitationMatrix(std::move(labels), std::move(dense));
  }
  Sparse sparse(n, n);
  sparse.setFromTriplets(triplets.begin(), triplets.end());
  sparse.prune(0.0);
  return CitationMatrix(std::move(labels), std::move(sparse));
}

void CitationMatrix::index_labels() {
  index_.clear();
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto& label = labels_[i];
    if (label.empty()) throw std::invalid_argument("node " + std::to_string(i) + " has an empty label");
    if (label.find_first_of("\r\n") != std::string::npos) {
      throw std::invalid_argument("label '" + label + "' contains a line break");
    }
    if (!index_.emplace(label, static_cast<Index>(i)).second) {
      throw std::invalid_argument("duplicate label '" + label + "'");
    }
  }
  fingerprint_ = fnv1a(labels_);
}

void CitationMatrix::check_entries() const {
  const Index n = size();
  std::visit(
      [n](const auto& m) {
        if (m.rows() != n || m.cols() != n) {
          throw std::invalid_argument("citation matrix must be " + std::to_string(n) + "x" +
                                      std::to_string(n) + " to match its labels, got " +
                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        }
      },
      entries_);
  if (const auto* dense = std::get_if<Dense>(&entries_)) {
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) check_value((*dense)(i, j), i, j);
  } else {
    const auto& sparse = std::get<Sparse>(entries_);
    for (Index i = 0; i < sparse.outerSize(); ++i)
      for (Sparse::InnerIterator it(sparse, i); it; ++it) check_value(it.value(), it.row(), it.col());
  }
}

std::optional<Index> CitationMatrix::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double CitationMatrix::operator()(Index row, Index col) const {
  if (row < 0 || row >= size() || col < 0 || col >= size()) {
    throw std::out_of_range("citation matrix index out of range");
  }
  if (const auto* dense = std::get_if<Dense>(&entries_)) return (*dense)(row, col);
  return std::get<Sparse>(entries_).coeff(row, col);
}

CitationMatrix::Dense CitationMatrix::to_dense() const {
  if (const auto* dense = std::get_if<Dense>(&entries_)) return *dense;
  return Dense(std::get<Sparse>(entries_));
}

std::vector<CitationMatrix::Triplet> CitationMatrix::nonzeros() const {
  std::vector<Triplet> out;
  if (const auto* dense = std::get_if<Dense>(&entries_)) {
    for (Index i = 0; i < dense->rows(); ++i)
      for (Index j = 0; j < dense->cols(); ++j)
        if ((*dense)(i, j) != 0.0) out.emplace_back(i, j, (*dense)(i, j));
    return out;
  }
  const auto& sparse = std::get<Sparse>(entries_);
  out.reserve(static_cast<std::size_t>(sparse.nonZeros()));
  for (Index i = 0; i < sparse.outerSize(); ++i)
    for (Sparse::InnerIterator it(sparse, i); it; ++it)
      if (it.value() != 0.0) out.emplace_back(it.row(), it.col(), it.value());
  return out;
}

double CitationMatrix::total() const {
  return std::visit([](const auto& m) { return m.sum(); }, entries_);
}

Eigen::VectorXd CitationMatrix::multiply(const Eigen::VectorXd& v) const {
  if (v.size() != size()) {
    throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                " does not match matrix of order " + std::to_string(size()));
  }
  return std::visit([&v](const auto& m) -> Eigen::VectorXd { return m * v; }, entries_);
}

Eigen::VectorXd CitationMatrix::multiply_transposed(const Eigen::VectorXd& v) const {
  if (v.size() != size()) {
    throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                " does not match matrix of order " + std::to_string(size()));
  }
  return std::visit([&v](const auto& m) -> Eigen::VectorXd { return m.transpose() * v; },
                    entries_);
}

bool operator==(const CitationMatrix& a, const CitationMatrix& b) {
  if (a.labels_ != b.labels_) return false;
  if (a.is_sparse() && b.is_sparse()) {
    const auto& sa = std::get<CitationMatrix::Sparse>(a.entries_);
    const auto& sb = std::get<CitationMatrix::Sparse>(b.entries_);
    CitationMatrix::Sparse diff = sa - sb;
    diff.prune(0.0);
    return diff.nonZeros() == 0;
  }
  return a.to_dense() == b.to_dense();
}

} // namespace pwr
