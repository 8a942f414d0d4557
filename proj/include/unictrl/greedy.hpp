#pragma once

#include <optional>

#include "unictrl/cone.hpp"
#include "unictrl/spectral.hpp"
#include "unictrl/types.hpp"

namespace unictrl {

struct GreedyOptions {
    Tolerances tol;
    /// Forced column choices consumed one per iteration before any
    /// selection logic runs (replays a published run).
    std::vector<SignedVersor> overrides;
    /// When set, ties among equally good candidates are broken uniformly
    /// at random with this seed instead of by the deterministic rule
    /// (lowest node index, positive sign first).
    std::optional<unsigned> random_seed;
};

struct CandidateEval {
    SignedVersor beta;
    int lineality = 0;  // |X^l| after adding the candidate (pair candidates: both signs)
    int delta = 0;
    int cone_dim = -1;  // irredundant generator count; -1 when not evaluated
};

struct IterationRecord {
    int step = 0;
    bool overridden = false;
    bool pair_added = false;
    /// The pair branch fired with a single budget slot left; the closing
    /// single-column branch was applied instead.
    bool pair_branch_blocked = false;
    bool trailing_single = false;
    std::vector<CandidateEval> singles;
    std::vector<CandidateEval> pairs;
    std::vector<SignedVersor> chosen;
    int lineality_after = 0;
    int generators_after = 0;
};

struct PlacementResult {
    InputMatrix B;
    NodeSubset Vs;   // final controllable node subset
    NodeSubset Vs1;  // matching stage subset, before the Q enlargement
    std::vector<IterationRecord> trace;
    SpectralDecomposition decomp;  // chains selected against the final B
    ReachableCone cone;
    QSet Q;
    bool matching_saturated = true;
    /// The matched subset failed its projection certificate and was
    /// replaced by a rank-revealing row selection from W.
    bool vs1_from_rank_fallback = false;
    /// Nodes whose Q-row sign pair fired but whose addition would have
    /// broken subset controllability; they are skipped and their columns
    /// kept. (The sign condition certifies the node alone, not the union.)
    std::vector<int> rejected_enlargements;
};

/// Lineality gain of appending column beta to Bprev. Chains are
/// re-selected against the candidate input matrix before the cone is
/// rebuilt, since the orthogonality maximization depends on B.
int delta(const SpectralDecomposition& base, const InputMatrix& Bprev, SignedVersor beta,
          const Tolerances& tol = {});

struct SelectionOutcome {
    bool pair = false;
    SignedVersor beta;  // pair means (beta, -beta)
    IterationRecord record;
};

/// One greedy step: the single column maximizing the lineality (ties by
/// cone dimension, then the deterministic rule), or a +/- pair when no
/// single column increases the lineality. `allow_pair = false` applies
/// the closing branch: a single column chosen the same way even with
/// zero gain.
SelectionOutcome select_column(const SpectralDecomposition& base, const InputMatrix& Bprev,
                               const GreedyOptions& opts = {}, bool allow_pair = true);

/// Two-step placement heuristic: lineality-maximizing column selection,
/// then the matching-based initial subset, then the Q-row enlargement.
PlacementResult place_inputs(const Matrix& A, int m, const GreedyOptions& opts = {});

/// The analysis tail of place_inputs for a fixed B: chain selection,
/// cone, Q, matching (preferring nodes the enlargement cannot add), and
/// the Q-row enlargement. Trace is left empty.
PlacementResult evaluate_placement(const Matrix& A, const InputMatrix& B,
                                   const Tolerances& tol = {});

}  // namespace unictrl
