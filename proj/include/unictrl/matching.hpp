#pragma once

#include "unictrl/types.hpp"

namespace unictrl {

/// Unbalanced bipartite graph pairing lineality spanning vectors (left)
/// with node coordinates (right, 0-based here). Adjacency lists are kept
/// in ascending order so the matching is deterministic.
struct BipartiteGraph {
    int left_count = 0;
    int right_count = 0;
    std::vector<std::vector<int>> adj;  // per left vertex
};

/// Maximum-cardinality matching, O(sqrt(V) E). Returns (left, right)
/// pairs sorted by left vertex.
std::vector<std::pair<int, int>> hopcroft_karp(const BipartiteGraph& g);

/// As above but growing a given initial matching to maximum cardinality.
/// `matched_right[r]` is the left partner of right vertex r or -1.
std::vector<std::pair<int, int>> hopcroft_karp_from(const BipartiteGraph& g,
                                                    std::vector<int> matched_right);

/// Graph from the lineality spanning set: edge (j, i) when |e_i^T w_j| > tau.
BipartiteGraph lineality_graph(const Matrix& W, int n, double tau_zero = 1e-9);

struct LinealityMatching {
    NodeSubset nodes;                        // matched node indices, 1-based
    std::vector<std::pair<int, int>> pairs;  // (W column, node index 1-based)
    bool saturated = true;                   // matching covered every W column
};

/// Initial controllable node subset: match W columns to node coordinates
/// and return the matched nodes. When `prefer_avoid` is given, maximum
/// matchings that leave those nodes unmatched are preferred (two-phase
/// matching); cardinality is unaffected. A matching smaller than the
/// number of W columns is reported through `saturated` rather than an
/// error, since the lineality bound is then not certified.
LinealityMatching subset_from_lineality(const Matrix& W, int n, double tau_zero = 1e-9,
                                        const std::vector<int>& prefer_avoid = {});

}  // namespace unictrl
