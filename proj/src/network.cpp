#include "mgrid/network.hpp"

#include <algorithm>
#include <numeric>

#include "mgrid/rng.hpp"

namespace mgrid {

int NetworkTopology::node_index(int id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == id) return int(i);
  throw Error(ErrorCode::invalid_argument,
              "unknown node id " + std::to_string(id));
}

bool NetworkTopology::is_connected() const {
  if (nodes.empty()) return false;
  std::vector<char> seen(nodes.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const auto& [tail, head] : arcs) {
      int a = node_index(tail), b = node_index(head);
      if (a == u && !seen[b]) { seen[b] = 1; stack.push_back(b); }
      if (b == u && !seen[a]) { seen[a] = 1; stack.push_back(a); }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

Mat build_incidence(const std::vector<int>& nodes,
                    const std::vector<std::pair<int, int>>& arcs) {
  auto index_of = [&](int id) {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == id) return int(i);
    throw Error(ErrorCode::invalid_argument,
                "arc references unknown node id " + std::to_string(id));
  };
  Mat C = Mat::Zero(long(nodes.size()), long(arcs.size()));
  for (size_t a = 0; a < arcs.size(); ++a) {
    const auto& [tail, head] = arcs[a];
    if (tail == head)
      throw Error(ErrorCode::invalid_argument,
                  "self-loop arc at node " + std::to_string(tail));
    C(index_of(tail), long(a)) = -1.0;
    C(index_of(head), long(a)) = +1.0;
  }
  return C;
}

NetworkTopology make_topology_from_arcs(std::vector<int> nodes,
                                        std::vector<std::pair<int, int>> arcs) {
  NetworkTopology topo;
  topo.nodes = std::move(nodes);
  topo.arcs = std::move(arcs);
  topo.incidence = build_incidence(topo.nodes, topo.arcs);
  if (!topo.is_connected())
    throw Error(ErrorCode::invalid_argument, "topology is not connected");
  return topo;
}

int reference_arc_count(int n_nodes) {
  switch (n_nodes) {
    case 3: return 3;
    case 6: return 7;
    case 12: return 16;
    case 24: return 33;
    case 48: return 69;
    default: return (n_nodes - 1) + (n_nodes - 1) / 2;
  }
}

NetworkTopology make_topology(int n_nodes, uint64_t seed) {
  if (n_nodes < 2)
    throw Error(ErrorCode::invalid_argument, "need at least 2 nodes");
  Rng rng = Rng(seed).substream(0x7090);
  std::vector<int> nodes(n_nodes);
  std::iota(nodes.begin(), nodes.end(), 0);

  // Random spanning tree: attach each new node to a uniformly chosen
  // earlier node, after shuffling the attachment order.
  std::vector<int> order(nodes);
  for (int i = n_nodes - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(uint64_t(i) + 1)]);
  std::vector<std::pair<int, int>> arcs;
  for (int i = 1; i < n_nodes; ++i) {
    int parent = order[rng.below(uint64_t(i))];
    int child = order[i];
    if (rng.uniform01() < 0.5) std::swap(parent, child);
    arcs.emplace_back(parent, child);
  }

  auto has_pair = [&](int u, int v) {
    for (const auto& [a, b] : arcs)
      if ((a == u && b == v) || (a == v && b == u)) return true;
    return false;
  };
  int target = reference_arc_count(n_nodes);
  long max_pairs = long(n_nodes) * (n_nodes - 1) / 2;
  if (target > max_pairs) target = int(max_pairs);
  int guard = 0;
  while (int(arcs.size()) < target && guard < 100000) {
    ++guard;
    int u = int(rng.below(uint64_t(n_nodes)));
    int v = int(rng.below(uint64_t(n_nodes)));
    if (u == v || has_pair(u, v)) continue;
    arcs.emplace_back(u, v);
  }
  return make_topology_from_arcs(std::move(nodes), std::move(arcs));
}

Vec project_onto_image(const Vec& v, const NetworkTopology& topology) {
  const int n = topology.n_nodes();
  if (v.size() % n != 0)
    throw Error(ErrorCode::invalid_argument,
                "vector length is not a multiple of the node count");
  const int T = int(v.size()) / n;
  Vec out(v.size());
  for (int t = 0; t < T; ++t) {
    double mean = v.segment(long(t) * n, n).mean();
    out.segment(long(t) * n, n) = v.segment(long(t) * n, n).array() - mean;
  }
  return out;
}

}  // namespace mgrid
