#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sgs {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph over dense vertex ids 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range ids.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const {
    return adjacency_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return neighbors_.at(v); }
  [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors_.at(v).size(); }
  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }

  /// Edges as (min, max) pairs in lexicographic order.
  [[nodiscard]] std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Vertex>> neighbors_;  // kept sorted
  std::vector<std::uint8_t> adjacency_;         // n*n, symmetric
};

}  // namespace sgs
