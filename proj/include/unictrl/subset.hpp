#pragma once

#include "unictrl/cone.hpp"
#include "unictrl/types.hpp"

namespace unictrl {

/// Does the positive span of the columns of V equal all of R^d?
/// Decided as: linear rank d, plus existence of coefficients alpha >= 1
/// with V alpha = 0 (the LP-expressible form of strictly positive
/// vanishing combinations).
bool positive_span_is_full(const Matrix& vectors, int d, double tau_lp = 1e-7);

/// Projection test for node-subset reachability/controllability: project
/// the cone generators onto the coordinates of Vs and ask whether the
/// projections positively span the subspace. Reachable and controllable
/// node subsets coincide, so one answer serves both questions.
bool is_subset_controllable(const ReachableCone& cone, const NodeSubset& Vs,
                            double tau_zero = 1e-9, double tau_lp = 1e-7);

/// Does row `node` of Q carry two entries of strictly opposite sign?
/// When it does, the node can be appended to a controllable subset.
bool ray_pair_node_test(int node, const QSet& Q, double tau_zero = 1e-9);

}  // namespace unictrl
