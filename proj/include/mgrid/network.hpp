#pragma once

#include <utility>
#include <vector>

#include "mgrid/common.hpp"

namespace mgrid {

/// Directed microgrid graph with its node-arc incidence matrix.
/// Sign convention: column a has -1 at the arc's tail and +1 at its head.
struct NetworkTopology {
  std::vector<int> nodes;                   // node identifiers
  std::vector<std::pair<int, int>> arcs;    // (tail id, head id)
  Mat incidence;                            // |N| x |A|, entries in {-1,0,+1}

  int n_nodes() const { return int(nodes.size()); }
  int n_arcs() const { return int(arcs.size()); }
  int node_index(int id) const;
  bool is_connected() const;
};

// Builds the incidence matrix; rejects self-loops and unknown node ids.
Mat build_incidence(const std::vector<int>& nodes,
                    const std::vector<std::pair<int, int>>& arcs);

NetworkTopology make_topology_from_arcs(std::vector<int> nodes,
                                        std::vector<std::pair<int, int>> arcs);

// Connected random graph: spanning tree plus chords. The five reference
// sizes 3/6/12/24/48 get arc counts 3/7/16/33/69; other sizes get
// (n-1) + floor((n-1)/2) arcs. Deterministic for a fixed seed.
NetworkTopology make_topology(int n_nodes, uint64_t seed);

int reference_arc_count(int n_nodes);

// Orthogonal projection of a stage-major (T*|N|) vector onto im(C-stacked).
// For a connected graph this subtracts the per-stage mean across nodes.
Vec project_onto_image(const Vec& v, const NetworkTopology& topology);

}  // namespace mgrid
