#pragma once

#include <optional>

#include "unictrl/spectral.hpp"
#include "unictrl/types.hpp"

namespace unictrl {

/// Which branch of the generator-set definition fired for a (block, k) pair.
/// Real blocks whose coefficient rows mix signs land in PlanePair with the
/// imaginary parts vanishing, which degenerates to the {r, -r} line.
enum class GammaCase { Empty, LinePair, RayPlus, RayMinus, PlanePair };

enum class GeneratorKind { LineHalf, Ray };

enum class GeneratorPart { PlusR, MinusR, PlusRe, MinusRe, PlusIm, MinusIm };

struct ConeGenerator {
    Vector vector;  // unit norm
    int block = 0;
    int chain_index = 1;  // 1-based k
    GeneratorPart part = GeneratorPart::PlusR;
    GeneratorKind kind = GeneratorKind::Ray;
};

struct GammaResult {
    GammaCase gcase = GammaCase::Empty;
    std::vector<ConeGenerator> generators;
};

struct GammaRecord {
    int block = 0;
    int chain_index = 1;
    GammaCase gcase = GammaCase::Empty;
};

struct LinealityTag {
    int block = 0;
    int chain_index = 1;
    GeneratorPart part = GeneratorPart::PlusR;  // PlusR / PlusRe / PlusIm
};

struct ReachableCone {
    int ambient_dim = 0;
    std::vector<ConeGenerator> generators;
    std::vector<GammaRecord> cases;  // one per representative (block, k)
    Matrix lineality_basis;          // n x lineality_dim, columns = W
    std::vector<LinealityTag> lineality_tags;
    int lineality_dim = 0;

    Matrix generator_matrix() const;
};

struct QTag {
    int block = 0;
    int chain_index = 1;
    int sign = +1;  // +1: the +r ray is reachable, -1: the -r ray
};

struct QSet {
    Matrix columns;  // n x q
    std::vector<QTag> tags;

    int size() const { return static_cast<int>(columns.cols()); }
};

/// Generator set contributed by chain position k of one Jordan block,
/// given the selected chains and B. Conjugate blocks contribute the same
/// real plane; call this on representative blocks only.
GammaResult gamma_set(const JordanBlock& block, int k, const InputMatrix& B,
                      double tau_zero = 1e-9);

/// The unilaterally reachable cone: generators from every gamma set plus
/// the spanning set of its lineality space.
ReachableCone reachable_cone(const SpectralDecomposition& decomp, const InputMatrix& B,
                             double tau_zero = 1e-9);

/// Is x a nonnegative combination of the cone generators? LP-decided;
/// throws LpFailure when the solver fails (distinct from "no").
bool cone_membership(const ReachableCone& cone, const Vector& x, double tau_lp = 1e-7);

/// Membership margin used to flag near-boundary queries: the phase-1
/// residual of the membership LP, scaled like cone_membership's tolerance.
double cone_membership_residual(const ReachableCone& cone, const Vector& x);

/// Is x unilaterally controllable (steerable to the origin and beyond)?
/// True when x lies in the lineality space or -exp(At)x is reachable for
/// some t on the grid. A false answer means no witness on the grid.
bool controllable_membership(const SpectralDecomposition& decomp, const InputMatrix& B,
                             const ReachableCone& cone, const Vector& x,
                             const std::vector<double>& time_grid, double tau_lp = 1e-7);

/// Generators of the cone outside the lineality space (the Q matrix).
/// Each column is LP-verified: its negation is not reachable.
QSet q_set(const ReachableCone& cone, double tau_lp = 1e-7);

/// Cone dimension as the count of irredundant generators (a generator is
/// redundant when it lies in the positive span of the others).
int cone_dimension(const ReachableCone& cone, double tau_lp = 1e-7);

}  // namespace unictrl
