#include "pwr/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace pwr {

SimilarityMatrix citing_cosine_matrix(const CitationMatrix& z, DiagonalPolicy diagonal) {
  Eigen::MatrixXd m = z.to_dense();
  if (diagonal == DiagonalPolicy::exclude) m.diagonal().setZero();

  const Index n = m.cols();
  const Eigen::VectorXd norms = m.colwise().norm().transpose();
  for (Index j = 0; j < n; ++j)
    if (norms[j] > 0.0) m.col(j) /= norms[j];

  SimilarityMatrix s{z.labels(), Eigen::MatrixXd::Zero(n, n)};
  for (Index i = 0; i < n; ++i) {
    if (norms[i] == 0.0) continue;
    s.values(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      const double c = std::clamp(m.col(i).dot(m.col(j)), 0.0, 1.0);
      s.values(i, j) = c;
      s.values(j, i) = c;
    }
  }
  return s;
}

WeightedGraph::WeightedGraph(std::vector<std::string> labels, std::vector<WeightedEdge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const auto n = labels_.size();
  adjacency_.resize(n);
  degree_.assign(n, 0.0);
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n) {
      throw std::out_of_range("edge endpoint outside graph");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weights must be positive and finite");
    }
    adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
    adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
    degree_[static_cast<std::size_t>(e.u)] += e.weight;
    degree_[static_cast<std::size_t>(e.v)] += e.weight;
    total_weight_ += e.weight;
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k].first == list[k - 1].first) throw std::invalid_argument("parallel edges are not allowed");
    }
  }
}

WeightedGraph threshold_graph(const SimilarityMatrix& s, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("threshold must be non-negative");
  std::vector<WeightedEdge> edges;
  for (Index i = 0; i < s.size(); ++i)
    for (Index j = i + 1; j < s.size(); ++j)
      if (s.values(i, j) > tau) edges.push_back({i, j, s.values(i, j)});
  return WeightedGraph(s.labels, std::move(edges));
}

Index Partition::community_count() const {
  if (community_of.empty()) return 0;
  return *std::max_element(community_of.begin(), community_of.end()) + 1;
}

std::vector<std::vector<Index>> Partition::communities() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(community_count()));
  for (std::size_t v = 0; v < community_of.size(); ++v)
    out[static_cast<std::size_t>(community_of[v])].push_back(static_cast<Index>(v));
  return out;
}

double modularity(const WeightedGraph& g, std::span<const Index> community_of, double resolution) {
  if (static_cast<Index>(community_of.size()) != g.size()) {
    throw std::invalid_argument("partition does not cover every node");
  }
  const double m = g.total_weight();
  if (!(m > 0.0)) throw std::domain_error("modularity is undefined on a graph without edges");

  Index communities = 0;
  for (Index c : community_of) {
    if (c < 0) throw std::invalid_argument("negative community id");
    communities = std::max(communities, c + 1);
  }
  std::vector<double> inside(static_cast<std::size_t>(communities), 0.0);
  std::vector<double> total(static_cast<std::size_t>(communities), 0.0);
  for (const auto& e : g.edges()) {
    if (community_of[static_cast<std::size_t>(e.u)] == community_of[static_cast<std::size_t>(e.v)]) {
      inside[static_cast<std::size_t>(community_of[static_cast<std::size_t>(e.u)])] += 2.0 * e.weight;
    }
  }
  for (Index v = 0; v < g.size(); ++v) total[static_cast<std::size_t>(community_of[static_cast<std::size_t>(v)])] += g.degree(v);

  const double two_m = 2.0 * m;
  double q = 0.0;
  for (std::size_t c = 0; c < inside.size(); ++c) {
    const double share = total[c] / two_m;
    q += inside[c] / two_m - resolution * share * share;
  }
  return q;
}

namespace {

// Graph of one Louvain level. self_loop[i] is A_ii, so internal weight of an
// aggregated community is counted in both directions as in the degree.
struct LevelGraph {
  std::vector<std::vector<std::pair<Index, double>>> adjacency;
  std::vector<double> self_loop;
  std::vector<double> degree;
  double two_m = 0.0;

  Index size() const { return static_cast<Index>(degree.size()); }
};

LevelGraph level_from(const WeightedGraph& g) {
  LevelGraph level;
  const auto n = static_cast<std::size_t>(g.size());
  level.adjacency.resize(n);
  level.self_loop.assign(n, 0.0);
  level.degree.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    level.adjacency[v] = g.neighbours(static_cast<Index>(v));
    level.degree[v] = g.degree(static_cast<Index>(v));
    level.two_m += level.degree[v];
  }
  return level;
}

/// Renumbers ids contiguously in order of first appearance. Returns the count.
Index renumber(std::vector<Index>& ids) {
  std::map<Index, Index> remap;
  for (auto& id : ids) {
    auto [it, inserted] = remap.emplace(id, static_cast<Index>(remap.size()));
    id = it->second;
  }
  return static_cast<Index>(remap.size());
}

/// Local moving phase. Returns the community of every level node.
std::vector<Index> local_moving(const LevelGraph& g, double resolution) {
  const Index n = g.size();
  std::vector<Index> community(static_cast<std::size_t>(n));
  std::vector<double> total(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) {
    community[static_cast<std::size_t>(v)] = v;
    total[static_cast<std::size_t>(v)] = g.degree[static_cast<std::size_t>(v)];
  }
  const double eps = 1e-12 * std::max(1.0, g.two_m);
  std::vector<double> link(static_cast<std::size_t>(n), 0.0);
  std::vector<Index> touched;

  bool moved = true;
  while (moved) {
    moved = false;
    for (Index v = 0; v < n; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      const Index own = community[vi];
      const double k = g.degree[vi];

      touched.clear();
      touched.push_back(own);
      for (const auto& [u, w] : g.adjacency[vi]) {
        const Index c = community[static_cast<std::size_t>(u)];
        if (link[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
        link[static_cast<std::size_t>(c)] += w;
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

      total[static_cast<std::size_t>(own)] -= k;
      auto gain = [&](Index c) {
        return link[static_cast<std::size_t>(c)] -
               resolution * total[static_cast<std::size_t>(c)] * k / g.two_m;
      };
      Index best = own;
      double best_gain = gain(own);
      for (Index c : touched) {
        if (c == own) continue;
        const double candidate = gain(c);
        if (candidate > best_gain + eps) {
          best = c;
          best_gain = candidate;
        }
      }
      total[static_cast<std::size_t>(best)] += k;
      community[vi] = best;
      if (best != own) moved = true;
      for (Index c : touched) link[static_cast<std::size_t>(c)] = 0.0;
    }
  }
  return community;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<Index>& community, Index count) {
  LevelGraph out;
  const auto m = static_cast<std::size_t>(count);
  out.self_loop.assign(m, 0.0);
  out.degree.assign(m, 0.0);
  out.adjacency.resize(m);
  std::vector<std::map<Index, double>> links(m);
  for (Index v = 0; v < g.size(); ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const auto c = static_cast<std::size_t>(community[vi]);
    out.self_loop[c] += g.self_loop[vi];
    out.degree[c] += g.degree[vi];
    for (const auto& [u, w] : g.adjacency[vi]) {
      const Index d = community[static_cast<std::size_t>(u)];
      if (static_cast<std::size_t>(d) == c) {
        out.self_loop[c] += w;
      } else {
        links[c][d] += w;
      }
    }
  }
  for (std::size_t c = 0; c < m; ++c) out.adjacency[c].assign(links[c].begin(), links[c].end());
  out.two_m = g.two_m;
  return out;
}

/// Merges adjacent communities while the best merge does not lower Q.
/// Returns the community of every level node.
std::vector<Index> merge_ties(const LevelGraph& g, double resolution) {
  const Index n = g.size();
  std::vector<Index> community(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) community[static_cast<std::size_t>(v)] = v;
  const double eps = 1e-12;

  std::vector<double> total = g.degree;
  std::vector<std::map<Index, double>> links(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v)
    for (const auto& [u, w] : g.adjacency[static_cast<std::size_t>(v)]) links[static_cast<std::size_t>(v)][u] += w;
  std::vector<bool> alive(static_cast<std::size_t>(n), true);

  while (true) {
    double best_gain = -std::numeric_limits<double>::infinity();
    Index best_c = -1;
    Index best_d = -1;
    for (Index c = 0; c < n; ++c) {
      if (!alive[static_cast<std::size_t>(c)]) continue;
      for (const auto& [d, w] : links[static_cast<std::size_t>(c)]) {
        if (d <= c || w <= 0.0) continue;
        const double gain = 2.0 * w / g.two_m - 2.0 * resolution * total[static_cast<std::size_t>(c)] *
                                                    total[static_cast<std::size_t>(d)] / (g.two_m * g.two_m);
        if (gain > best_gain + eps) {
          best_gain = gain;
          best_c = c;
          best_d = d;
        }
      }
    }
    if (best_c < 0 || best_gain < -eps) break;

    // Fold best_d into best_c.
    const auto c = static_cast<std::size_t>(best_c);
    const auto d = static_cast<std::size_t>(best_d);
    total[c] += total[d];
    alive[d] = false;
    for (const auto& [e, w] : links[d]) {
      const auto ei = static_cast<std::size_t>(e);
      links[ei].erase(best_d);
      if (e == best_c) continue;
      links[c][e] += w;
      links[ei][best_c] += w;
    }
    links[c].erase(best_d);
    links[d].clear();
    for (auto& id : community)
      if (id == best_d) id = best_c;
  }
  return community;
}

} // namespace

Partition louvain_partition(const WeightedGraph& g, double resolution) {
  if (g.size() < 1) throw std::invalid_argument("Louvain needs at least one node");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

  const auto n = static_cast<std::size_t>(g.size());
  Partition partition;
  partition.community_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) partition.community_of[v] = static_cast<Index>(v);

  const bool has_edges = g.total_weight() > 0.0;
  auto record = [&] {
    if (has_edges) partition.level_modularity.push_back(modularity(g, partition.community_of, resolution));
  };
  record();
  if (!has_edges) return partition;

  LevelGraph level = level_from(g);
  while (true) {
    std::vector<Index> community = local_moving(level, resolution);
    const Index count = renumber(community);
    if (count == level.size()) break;
    for (auto& c : partition.community_of) c = community[static_cast<std::size_t>(c)];
    record();
    level = aggregate(level, community, count);
  }

  std::vector<Index> merged = merge_ties(level, resolution);
  const Index count = renumber(merged);
  if (count < level.size()) {
    for (auto& c : partition.community_of) c = merged[static_cast<std::size_t>(c)];
    record();
  }

  renumber(partition.community_of);
  partition.q = modularity(g, partition.community_of, resolution);
  return partition;
}

NodeSet citing_threshold_subset(const CitationMatrix& z, std::string_view target, double min_count) {
  const auto row = z.index_of(target);
  if (!row) throw std::invalid_argument("unknown journal label '" + std::string(target) + "'");
  if (!(min_count >= 0.0)) throw std::invalid_argument("minimum citation count must be non-negative");
  std::vector<Index> nodes;
  for (Index j = 0; j < z.size(); ++j)
    if (z(*row, j) >= min_count) nodes.push_back(j);
  return NodeSet(z, std::move(nodes));
}

NodeSet union_subset(const CitationMatrix& parent, const NodeSet& a, const NodeSet& b) {
  for (const NodeSet* s : {&a, &b}) {
    if (s->parent_size() != parent.size() || s->parent_fingerprint() != parent.fingerprint()) {
      throw std::invalid_argument("node sets belong to different matrices");
    }
  }
  std::vector<Index> merged(a.indices().begin(), a.indices().end());
  merged.insert(merged.end(), b.indices().begin(), b.indices().end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return NodeSet(parent, std::move(merged));
}

} // namespace pwr
