#include "unictrl/subset.hpp"

#include "unictrl/lp.hpp"

namespace unictrl {

bool positive_span_is_full(const Matrix& vectors, int d, double tau_lp) {
    if (d == 0) return true;
    if (vectors.cols() == 0) return false;
    if (vectors.rows() != d) throw InputError("positive_span_is_full: row count must equal d");

    Eigen::JacobiSVD<Matrix> svd(vectors);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * sv(0)) ++rank;
    if (rank < d) return false;

    auto f = lp::bounded_below_solution_exists(vectors, Vector::Zero(d), 1.0, tau_lp);
    return f.feasible;
}

bool is_subset_controllable(const ReachableCone& cone, const NodeSubset& Vs,
                            double tau_zero, double tau_lp) {
    if (Vs.empty()) return true;
    for (int i : Vs.indices())
        if (i < 1 || i > cone.ambient_dim) throw InputError("subset node index out of range");

    const int d = Vs.size();
    const Matrix G = cone.generator_matrix();

    // project onto the subset coordinates, dropping zero columns
    std::vector<Vector> cols;
    for (int j = 0; j < G.cols(); ++j) {
        Vector p(d);
        for (int r = 0; r < d; ++r) p(r) = G(Vs.indices()[r] - 1, j);
        if (p.lpNorm<Eigen::Infinity>() > tau_zero) cols.push_back(p);
    }
    if (cols.empty()) return false;
    Matrix P(d, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) P.col(static_cast<int>(j)) = cols[j];
    return positive_span_is_full(P, d, tau_lp);
}

bool ray_pair_node_test(int node, const QSet& Q, double tau_zero) {
    if (Q.size() == 0) return false;
    if (node < 1 || node > Q.columns.rows()) throw InputError("node index out of range");
    bool pos = false, neg = false;
    for (int j = 0; j < Q.columns.cols(); ++j) {
        const double v = Q.columns(node - 1, j);
        if (v > tau_zero) pos = true;
        if (v < -tau_zero) neg = true;
    }
    return pos && neg;
}

}  // namespace unictrl
