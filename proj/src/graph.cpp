#include "pwr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pwr {

NodeSet::NodeSet(const CitationMatrix& parent, std::vector<Index> indices)
    : parent_size_(parent.size()), parent_fingerprint_(parent.fingerprint()),
      indices_(std::move(indices)) {
  std::vector<bool> seen(static_cast<std::size_t>(parent_size_), false);
  for (Index i : indices_) {
    if (i < 0 || i >= parent_size_) {
      throw std::out_of_range("node index " + std::to_string(i) + " outside [0, " +
                              std::to_string(parent_size_) + ")");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("node index " + std::to_string(i) + " repeated in node set");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
}

NodeSet NodeSet::all(const CitationMatrix& parent) {
  std::vector<Index> indices(static_cast<std::size_t>(parent.size()));
  for (Index i = 0; i < parent.size(); ++i) indices[static_cast<std::size_t>(i)] = i;
  return NodeSet(parent, std::move(indices));
}

NodeSet NodeSet::from_labels(const CitationMatrix& parent, std::span<const std::string> labels) {
  std::vector<Index> indices;
  std::vector<std::string> unknown;
  for (const auto& label : labels) {
    if (auto i = parent.index_of(label)) {
      indices.push_back(*i);
    } else {
      unknown.push_back(label);
    }
  }
  if (!unknown.empty()) {
    std::string message = "unknown labels:";
    for (const auto& label : unknown) message += " '" + label + "'";
    throw std::invalid_argument(message);
  }
  return NodeSet(parent, std::move(indices));
}

bool NodeSet::contains(Index i) const {
  return std::find(indices_.begin(), indices_.end(), i) != indices_.end();
}

std::vector<std::string> NodeSet::labels(const CitationMatrix& parent) const {
  if (parent.fingerprint() != parent_fingerprint_ || parent.size() != parent_size_) {
    throw std::invalid_argument("node set belongs to a different matrix");
  }
  std::vector<std::string> out;
  out.reserve(indices_.size());
  for (Index i : indices_) out.push_back(parent.label(i));
  return out;
}

CitationMatrix transpose(const CitationMatrix& z) {
  if (z.is_sparse()) {
    CitationMatrix::Sparse t = std::get<CitationMatrix::Sparse>(z.storage()).transpose();
    return CitationMatrix(z.labels(), std::move(t));
  }
  return CitationMatrix(z.labels(), CitationMatrix::Dense(z.to_dense().transpose()));
}

CitationMatrix zero_diagonal(const CitationMatrix& z) {
  if (z.is_sparse()) {
    CitationMatrix::Sparse s = std::get<CitationMatrix::Sparse>(z.storage());
    s.prune([](Index row, Index col, double) { return row != col; });
    return CitationMatrix(z.labels(), std::move(s));
  }
  CitationMatrix::Dense d = z.to_dense();
  d.diagonal().setZero();
  return CitationMatrix(z.labels(), std::move(d));
}

Eigen::VectorXd row_sums(const CitationMatrix& z) {
  return z.multiply(Eigen::VectorXd::Ones(z.size()));
}

Eigen::VectorXd column_sums(const CitationMatrix& z) {
  return z.multiply_transposed(Eigen::VectorXd::Ones(z.size()));
}

Eigen::VectorXd matvec(const CitationMatrix& z, const Eigen::VectorXd& v) {
  return z.multiply(v);
}

CitationMatrix extract_subgraph(const CitationMatrix& z, const NodeSet& nodes) {
  if (nodes.parent_size() != z.size() || nodes.parent_fingerprint() != z.fingerprint()) {
    if (!(nodes.empty() && nodes.parent_size() == 0)) {
      throw std::invalid_argument("node set belongs to a different matrix");
    }
  }
  const auto idx = nodes.indices();
  const auto m = static_cast<Index>(idx.size());
  std::vector<std::string> labels;
  labels.reserve(idx.size());
  for (Index i : idx) labels.push_back(z.label(i));

  if (!z.is_sparse()) {
    const auto& d = std::get<CitationMatrix::Dense>(z.storage());
    CitationMatrix::Dense out(m, m);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) out(a, b) = d(idx[a], idx[b]);
    return CitationMatrix(std::move(labels), std::move(out));
  }
  std::vector<Index> position(static_cast<std::size_t>(z.size()), -1);
  for (Index a = 0; a < m; ++a) position[static_cast<std::size_t>(idx[a])] = a;
  std::vector<CitationMatrix::Triplet> triplets;
  for (const auto& t : z.nonzeros()) {
    const Index r = position[static_cast<std::size_t>(t.row())];
    const Index c = position[static_cast<std::size_t>(t.col())];
    if (r >= 0 && c >= 0) triplets.emplace_back(r, c, t.value());
  }
  return CitationMatrix::from_triplets(std::move(labels), triplets);
}

namespace {

/// Out-neighbours (cited journals) of every citing journal, ascending.
std::vector<std::vector<Index>> citing_adjacency(const CitationMatrix& z) {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(z.size()));
  for (const auto& t : z.nonzeros()) {
    if (t.row() != t.col() && t.value() > 0.0) out[static_cast<std::size_t>(t.col())].push_back(t.row());
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

} // namespace

SccResult strongly_connected_components(const CitationMatrix& z) {
  const Index n = z.size();
  const auto adj = citing_adjacency(z);
  constexpr Index kUnvisited = -1;

  std::vector<Index> index(static_cast<std::size_t>(n), kUnvisited);
  std::vector<Index> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Index> stack;
  std::vector<std::vector<Index>> found;
  Index counter = 0;

  struct Frame {
    Index node;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (Index root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& frame = call.back();
      const auto v = static_cast<std::size_t>(frame.node);
      if (frame.next == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(frame.node);
        on_stack[v] = true;
      }
      if (frame.next < adj[v].size()) {
        const auto w = static_cast<std::size_t>(adj[v][frame.next++]);
        if (index[w] == kUnvisited) {
          call.push_back({static_cast<Index>(w), 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Index> component;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          component.push_back(w);
        } while (w != frame.node);
        std::sort(component.begin(), component.end());
        found.push_back(std::move(component));
      }
      const Index finished = frame.node;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().node);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  SccResult result;
  result.component_of.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t c = 0; c < found.size(); ++c) {
    for (Index v : found[c]) result.component_of[static_cast<std::size_t>(v)] = static_cast<Index>(c);
    result.components.emplace_back(z, std::move(found[c]));
  }
  return result;
}

CitationMatrix largest_strong_component(const CitationMatrix& z) {
  const auto scc = strongly_connected_components(z);
  if (scc.components.empty()) return z;
  const NodeSet* best = &scc.components.front();
  for (const auto& c : scc.components) {
    if (c.size() > best->size()) best = &c;
  }
  return extract_subgraph(z, *best);
}

CitationMatrix matrix_power_oracle(const CitationMatrix& z, int k) {
  if (k < 1) throw std::invalid_argument("matrix power requires k >= 1");
  const CitationMatrix::Dense base = z.to_dense();
  const Index n = base.rows();
  CitationMatrix::Dense acc = base;
  for (int step = 1; step < k; ++step) {
    CitationMatrix::Dense next = CitationMatrix::Dense::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index l = 0; l < n; ++l) {
        const double a = acc(i, l);
        if (a == 0.0) continue;
        for (Index j = 0; j < n; ++j) next(i, j) += a * base(l, j);
      }
    if (!next.allFinite()) {
      throw std::overflow_error("matrix power overflows at k=" + std::to_string(step + 1));
    }
    acc = std::move(next);
  }
  return CitationMatrix(z.labels(), std::move(acc));
}

} // namespace pwr
