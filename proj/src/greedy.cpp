#include "unictrl/greedy.hpp"

#include <algorithm>
#include <random>

#include "unictrl/matching.hpp"
#include "unictrl/subset.hpp"

namespace unictrl {
namespace {

ReachableCone cone_for(const SpectralDecomposition& base, const InputMatrix& B,
                       const Tolerances& tol) {
    const SpectralDecomposition dec = select_left_chains(base, B, tol.zero);
    return reachable_cone(dec, B, tol.zero);
}

int lineality_of(const SpectralDecomposition& base, const InputMatrix& B,
                 const Tolerances& tol) {
    return cone_for(base, B, tol).lineality_dim;
}

int cone_dim_of(const SpectralDecomposition& base, const InputMatrix& B,
                const Tolerances& tol) {
    return cone_dimension(cone_for(base, B, tol), tol.lp);
}

// candidate order realizes the deterministic tie-break: lowest node
// index first, positive sign before negative
std::vector<SignedVersor> candidate_columns(int n) {
    std::vector<SignedVersor> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back({i, +1});
        out.push_back({i, -1});
    }
    return out;
}

template <typename T>
T pick_tied(const std::vector<T>& tied, std::optional<unsigned> seed) {
    if (tied.size() == 1 || !seed) return tied.front();
    std::mt19937 rng(*seed);
    return tied[rng() % tied.size()];
}

}  // namespace

int delta(const SpectralDecomposition& base, const InputMatrix& Bprev, SignedVersor beta,
          const Tolerances& tol) {
    const int before = Bprev.cols() == 0 ? 0 : lineality_of(base, Bprev, tol);
    const int after = lineality_of(base, Bprev.appended(beta), tol);
    return after - before;
}

SelectionOutcome select_column(const SpectralDecomposition& base, const InputMatrix& Bprev,
                               const GreedyOptions& opts, bool allow_pair) {
    const int n = base.n;
    const Tolerances& tol = opts.tol;
    SelectionOutcome out;

    const int lin_before = Bprev.cols() == 0 ? 0 : lineality_of(base, Bprev, tol);

    int best_lin = -1;
    for (SignedVersor beta : candidate_columns(n)) {
        CandidateEval ev;
        ev.beta = beta;
        ev.lineality = lineality_of(base, Bprev.appended(beta), tol);
        ev.delta = ev.lineality - lin_before;
        best_lin = std::max(best_lin, ev.lineality);
        out.record.singles.push_back(ev);
    }

    if (best_lin > lin_before || !allow_pair) {
        // single-column branch; with allow_pair == false this is the
        // closing branch and zero gain is acceptable
        std::vector<CandidateEval*> maximizers;
        for (auto& ev : out.record.singles)
            if (ev.lineality == best_lin) maximizers.push_back(&ev);

        if (maximizers.size() > 1) {
            int best_dim = -1;
            for (auto* ev : maximizers) {
                ev->cone_dim = cone_dim_of(base, Bprev.appended(ev->beta), tol);
                best_dim = std::max(best_dim, ev->cone_dim);
            }
            std::vector<SignedVersor> tied;
            for (auto* ev : maximizers)
                if (ev->cone_dim == best_dim) tied.push_back(ev->beta);
            out.beta = pick_tied(tied, opts.random_seed);
        } else {
            out.beta = maximizers.front()->beta;
        }
        out.record.trailing_single = best_lin <= lin_before;
        out.record.chosen = {out.beta};
        return out;
    }

    // pair branch: no single column raises the lineality
    out.pair = true;
    int best_pair_lin = -1;
    for (int i = 1; i <= n; ++i) {
        CandidateEval ev;
        ev.beta = {i, +1};
        ev.lineality = lineality_of(base, Bprev.appended({i, +1}).appended({i, -1}), tol);
        ev.delta = ev.lineality - lin_before;
        best_pair_lin = std::max(best_pair_lin, ev.lineality);
        out.record.pairs.push_back(ev);
    }
    std::vector<SignedVersor> tied;
    for (const auto& ev : out.record.pairs)
        if (ev.lineality == best_pair_lin) tied.push_back(ev.beta);
    out.beta = pick_tied(tied, opts.random_seed);
    out.record.pair_added = true;
    out.record.chosen = {out.beta, {out.beta.node, -out.beta.sign}};
    return out;
}

PlacementResult place_inputs(const Matrix& A, int m, const GreedyOptions& opts) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InputError("dynamics matrix must be square and non-empty");
    const int n = static_cast<int>(A.rows());
    if (m < 0) throw InputError("input budget must be nonnegative");
    if (m > 2 * n) throw InputError("input budget exceeds 2n (every signed versor twice)");
    if (static_cast<int>(opts.overrides.size()) > m)
        throw InputError("more override columns than the input budget");

    const Tolerances& tol = opts.tol;
    PlacementResult res;
    res.decomp = compute_spectrum(A, tol.eig);
    const SpectralDecomposition& base = res.decomp;

    InputMatrix B(n, {});
    size_t next_override = 0;
    int step = 1;
    while (B.cols() < m) {
        IterationRecord rec;
        rec.step = step++;
        const int remaining = m - B.cols();

        if (next_override < opts.overrides.size()) {
            const SignedVersor beta = opts.overrides[next_override++];
            if (beta.node < 1 || beta.node > n)
                throw InputError("override column node index out of range");
            CandidateEval ev;
            ev.beta = beta;
            ev.lineality = lineality_of(base, B.appended(beta), tol);
            ev.delta = ev.lineality - (B.cols() == 0 ? 0 : lineality_of(base, B, tol));
            rec.overridden = true;
            rec.singles.push_back(ev);
            rec.chosen = {beta};
            B = B.appended(beta);
        } else {
            SelectionOutcome sel = select_column(base, B, opts, /*allow_pair=*/remaining >= 2);
            rec.singles = std::move(sel.record.singles);
            rec.pairs = std::move(sel.record.pairs);
            rec.trailing_single = sel.record.trailing_single;
            rec.pair_branch_blocked = remaining < 2 && sel.record.trailing_single;
            rec.pair_added = sel.pair;
            rec.chosen = sel.record.chosen;
            for (SignedVersor c : rec.chosen) B = B.appended(c);
        }

        const ReachableCone c = cone_for(base, B, tol);
        rec.lineality_after = c.lineality_dim;
        rec.generators_after = static_cast<int>(c.generators.size());
        res.trace.push_back(std::move(rec));
    }

    auto evaluated = evaluate_placement(A, B, tol);
    evaluated.trace = std::move(res.trace);
    return evaluated;
}

PlacementResult evaluate_placement(const Matrix& A, const InputMatrix& B, const Tolerances& tol) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InputError("dynamics matrix must be square and non-empty");
    const int n = static_cast<int>(A.rows());

    PlacementResult res;
    res.B = B;
    const SpectralDecomposition base = compute_spectrum(A, tol.eig);
    res.decomp = select_left_chains(base, B, tol.zero);
    res.cone = reachable_cone(res.decomp, B, tol.zero);
    res.Q = q_set(res.cone, tol.lp);

    // nodes Algorithm 2 can add on its own are deprioritized in the matching
    std::vector<int> extendable;
    for (int i = 1; i <= n; ++i)
        if (ray_pair_node_test(i, res.Q, tol.zero)) extendable.push_back(i);

    LinealityMatching match =
        subset_from_lineality(res.cone.lineality_basis, n, tol.zero, extendable);
    res.Vs1 = match.nodes;
    res.matching_saturated = match.saturated;

    // a nonzero pairing does not guarantee an invertible projection on
    // degenerate spanning sets; fall back to a rank-revealing row pick
    if (!match.saturated ||
        !is_subset_controllable(res.cone, res.Vs1, tol.zero, tol.lp)) {
        Eigen::ColPivHouseholderQR<Matrix> qr(res.cone.lineality_basis.transpose());
        std::vector<int> rows;
        for (int q = 0; q < std::min<int>(res.cone.lineality_dim, qr.rank()); ++q)
            rows.push_back(qr.colsPermutation().indices()(q) + 1);
        NodeSubset alt(rows, n);
        if (is_subset_controllable(res.cone, alt, tol.zero, tol.lp)) {
            res.Vs1 = alt;
            res.vs1_from_rank_fallback = true;
        }
    }

    // enlargement: spend an opposite-sign column pair of Q per new node,
    // committing only when the union keeps its projection certificate
    res.Vs = res.Vs1;
    std::vector<bool> used(res.Q.size(), false);
    for (int i = 1; i <= n; ++i) {
        int pos_col = -1, neg_col = -1;
        for (int j = 0; j < res.Q.size() && (pos_col < 0 || neg_col < 0); ++j) {
            if (used[j]) continue;
            const double v = res.Q.columns(i - 1, j);
            if (v > tol.zero && pos_col < 0) pos_col = j;
            if (v < -tol.zero && neg_col < 0) neg_col = j;
        }
        if (pos_col >= 0 && neg_col >= 0) {
            if (res.Vs.contains(i)) {
                used[pos_col] = used[neg_col] = true;
                continue;
            }
            NodeSubset candidate = res.Vs;
            candidate.insert(i);
            if (is_subset_controllable(res.cone, candidate, tol.zero, tol.lp)) {
                res.Vs = candidate;
                used[pos_col] = used[neg_col] = true;
            } else {
                res.rejected_enlargements.push_back(i);
            }
        }
    }
    return res;
}

}  // namespace unictrl
