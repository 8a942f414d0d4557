#include "unictrl/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "unictrl/lp.hpp"

namespace unictrl {
namespace {

// hard guard against non-finite arithmetic
constexpr double kOverflowLimit = 1e120;
// drift magnitudes beyond this many multiples of the target scale cannot
// be cancelled at tau_lp precision in double arithmetic
constexpr double kResolvableDrift = 1e5;

// stacked reachability map M = [E^{N-1} D | ... | E D | D] and drift E^N x0
struct StackedMap {
    Matrix M;
    Vector drift;
};

StackedMap stacked_map(const SpectralDecomposition& decomp, const InputMatrix& B,
                       const Vector& x0, double T, int N) {
    if (!(T > 0)) throw InputError("horizon must be positive");
    if (N < 1) throw InputError("step count must be at least 1");
    const int n = decomp.n;
    const int m = B.cols();
    const double h = T / N;

    DiscreteMap map = interval_map(decomp, B, h);
    if (!map.E.allFinite() || map.E.cwiseAbs().maxCoeff() > kOverflowLimit)
        throw OracleError("interval propagation overflow; shorten the horizon");

    StackedMap out;
    out.M.resize(n, m * N);
    Matrix Epow = Matrix::Identity(n, n);  // E^k, filled right to left
    for (int k = N - 1; k >= 0; --k) {
        out.M.middleCols(k * m, m) = Epow * map.D;
        Epow = Epow * map.E;
        if (!Epow.allFinite() || Epow.cwiseAbs().maxCoeff() > kOverflowLimit)
            throw OracleError("interval propagation overflow; shorten the horizon");
    }
    out.drift = Epow * x0;
    return out;
}

std::pair<Matrix, Vector> constrained_rows(const StackedMap& sm, const Vector& target,
                                           const std::optional<NodeSubset>& subset) {
    if (!subset) return {sm.M, target - sm.drift};
    const auto& idx = subset->indices();
    Matrix M(idx.size(), sm.M.cols());
    Vector b(idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
        M.row(static_cast<int>(r)) = sm.M.row(idx[r] - 1);
        b(static_cast<int>(r)) = target(static_cast<int>(r)) - sm.drift(idx[r] - 1);
    }
    return {M, b};
}

}  // namespace

DiscreteMap interval_map(const SpectralDecomposition& decomp, const InputMatrix& B, double h) {
    DiscreteMap map;
    map.E = expm(decomp, h);
    map.D = expm_integral(decomp, h) * B.dense();
    return map;
}

bool reach_feasible(const SpectralDecomposition& decomp, const InputMatrix& B,
                    const Vector& x0, const Vector& target,
                    const std::optional<NodeSubset>& subset, double T, int N, double tau_lp) {
    const StackedMap sm = stacked_map(decomp, B, x0, T, N);
    auto [M, b] = constrained_rows(sm, target, subset);
    const double scale = std::max(1.0, target.lpNorm<Eigen::Infinity>());
    if (b.lpNorm<Eigen::Infinity>() > kResolvableDrift * scale)
        throw OracleError("drift exceeds resolvable precision; shorten the horizon");
    if (B.cols() == 0) return b.lpNorm<Eigen::Infinity>() <= tau_lp * scale;
    return lp::nonnegative_solution_exists(M, b, tau_lp, scale).feasible;
}

double reach_residual(const SpectralDecomposition& decomp, const InputMatrix& B,
                      const Vector& x0, const Vector& target,
                      const std::optional<NodeSubset>& subset, double T, int N) {
    const StackedMap sm = stacked_map(decomp, B, x0, T, N);
    auto [M, b] = constrained_rows(sm, target, subset);
    const double scale = std::max(1.0, target.lpNorm<Eigen::Infinity>());
    if (b.lpNorm<Eigen::Infinity>() > kResolvableDrift * scale)
        throw OracleError("drift exceeds resolvable precision; shorten the horizon");
    if (B.cols() == 0) return b.lpNorm<Eigen::Infinity>() / scale;
    return lp::nonnegative_solution_exists(M, b, 0.0, scale).residual;
}

AgreementReport sweep_agreement(const Matrix& A, const InputMatrix& B, const SweepOptions& opts) {
    const int n = static_cast<int>(A.rows());
    const Tolerances& tol = opts.tol;

    SpectralDecomposition base = compute_spectrum(A, tol.eig);
    SpectralDecomposition dec = select_left_chains(base, B, tol.zero);
    ReachableCone cone = reachable_cone(dec, B, tol.zero);

    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    AgreementReport report;
    report.total = opts.sphere_samples;
    const Vector origin = Vector::Zero(n);

    for (int s = 0; s < opts.sphere_samples; ++s) {
        Vector x(n);
        do {
            for (int i = 0; i < n; ++i) x(i) = gauss(rng);
        } while (x.norm() < 1e-8);
        x.normalize();

        const bool cone_says = cone_membership(cone, x, tol.lp);
        bool oracle_says = false;
        double best_oracle_residual = std::numeric_limits<double>::infinity();
        for (double T : opts.horizons) {
            try {
                if (reach_feasible(dec, B, origin, x, std::nullopt, T, opts.steps, tol.lp)) {
                    oracle_says = true;
                    best_oracle_residual = 0.0;
                    break;
                }
                best_oracle_residual = std::min(
                    best_oracle_residual,
                    reach_residual(dec, B, origin, x, std::nullopt, T, opts.steps));
            } catch (const OracleError&) {
                // horizon overflowed; skip it
            }
        }

        if (cone_says == oracle_says) {
            ++report.agreements;
        } else {
            Disagreement d;
            d.sample = s;
            d.target = x;
            d.cone_says = cone_says;
            d.oracle_says = oracle_says;
            d.cone_residual = cone_membership_residual(cone, x);
            d.oracle_residual = best_oracle_residual;
            // within a band of the cone boundary: barely outside, or barely
            // inside per either feasibility margin
            const double lo = tol.lp / 100.0, hi = tol.lp * 1e4;
            d.near_boundary = (d.cone_residual > 0 && d.cone_residual <= hi) ||
                              (d.oracle_residual > lo && d.oracle_residual <= hi);
            report.disagreements.push_back(std::move(d));
        }
    }
    report.fraction = report.total == 0 ? 1.0 : double(report.agreements) / report.total;
    return report;
}

}  // namespace unictrl
