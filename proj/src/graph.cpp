#include "sgs/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sgs {

Graph::Graph(std::size_t vertex_count)
    : n_(vertex_count), neighbors_(vertex_count), adjacency_(vertex_count * vertex_count, 0) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) {
    throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") references a vertex outside [0," + std::to_string(n_) + ")");
  }
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ")");
  }
  adjacency_[static_cast<std::size_t>(u) * n_ + v] = 1;
  adjacency_[static_cast<std::size_t>(v) * n_ + u] = 1;
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(neighbors_[u], v);
  insert_sorted(neighbors_[v], u);
  ++edge_count_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_ || !has_edge(u, v)) {
    throw std::invalid_argument("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  adjacency_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adjacency_[static_cast<std::size_t>(v) * n_ + u] = 0;
  std::erase(neighbors_[u], v);
  std::erase(neighbors_[v], u);
  --edge_count_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace sgs
