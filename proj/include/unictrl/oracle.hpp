#pragma once

#include <optional>

#include "unictrl/cone.hpp"
#include "unictrl/spectral.hpp"
#include "unictrl/types.hpp"

namespace unictrl {

/// Exact one-interval propagation x+ = E x + D u for piecewise-constant
/// inputs of step h, both matrices evaluated through the decomposition.
struct DiscreteMap {
    Matrix E;
    Matrix D;
};
DiscreteMap interval_map(const SpectralDecomposition& decomp, const InputMatrix& B, double h);

/// Can piecewise-constant nonnegative inputs on N uniform intervals steer
/// x0 to the target at time T? With `subset` given, only the listed
/// coordinates of x(T) are constrained. Inputs are discretized; the
/// interval propagation itself is exact, so a `true` answer certifies
/// reachability while `false` may be refined by larger N or T.
/// Throws OracleError when exp(A T) overflows the horizon.
bool reach_feasible(const SpectralDecomposition& decomp, const InputMatrix& B,
                    const Vector& x0, const Vector& target,
                    const std::optional<NodeSubset>& subset, double T, int N,
                    double tau_lp = 1e-7);

/// Residual of the same LP (0 when feasible); used for the near-boundary
/// diagnosis of disagreements.
double reach_residual(const SpectralDecomposition& decomp, const InputMatrix& B,
                      const Vector& x0, const Vector& target,
                      const std::optional<NodeSubset>& subset, double T, int N);

struct Disagreement {
    int sample = 0;
    Vector target;
    bool cone_says = false;
    bool oracle_says = false;
    double cone_residual = 0.0;
    double oracle_residual = 0.0;
    bool near_boundary = false;
};

struct AgreementReport {
    int total = 0;
    int agreements = 0;
    double fraction = 1.0;
    std::vector<Disagreement> disagreements;
};

struct SweepOptions {
    int sphere_samples = 200;
    std::vector<double> horizons = {0.5, 1.0, 2.0, 4.0};
    int steps = 32;
    unsigned seed = 20240315;
    Tolerances tol;
};

/// Samples unit-sphere targets and compares cone membership against the
/// discretized reachability oracle (reached from the origin over any of
/// the horizons). Disagreements within a tolerance band of the cone
/// boundary are flagged as near-boundary.
AgreementReport sweep_agreement(const Matrix& A, const InputMatrix& B,
                                const SweepOptions& opts = {});

}  // namespace unictrl
