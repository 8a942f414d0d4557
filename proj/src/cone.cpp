#include "unictrl/cone.hpp"

#include <cmath>

#include "unictrl/lp.hpp"

namespace unictrl {
namespace {

bool near_zero_row(const ComplexVector& row, double tau) {
    for (int i = 0; i < row.size(); ++i)
        if (std::abs(row(i).real()) > tau || std::abs(row(i).imag()) > tau) return false;
    return true;
}

bool nonneg_nonzero(const Vector& row, double tau) {
    bool some_pos = false;
    for (int i = 0; i < row.size(); ++i) {
        if (row(i) < -tau) return false;
        if (row(i) > tau) some_pos = true;
    }
    return some_pos;
}

ConeGenerator make_generator(const Vector& v, int block, int k, GeneratorPart part,
                             GeneratorKind kind) {
    ConeGenerator g;
    g.vector = v.normalized();
    g.block = block;
    g.chain_index = k;
    g.part = part;
    g.kind = kind;
    return g;
}

}  // namespace

Matrix ReachableCone::generator_matrix() const {
    Matrix G(ambient_dim, static_cast<int>(generators.size()));
    for (size_t j = 0; j < generators.size(); ++j) G.col(static_cast<int>(j)) = generators[j].vector;
    return G;
}

GammaResult gamma_set(const JordanBlock& block, int k, const InputMatrix& B, double tau_zero) {
    if (k < 1 || k > block.size) throw InputError("chain index out of range in gamma_set");

    GammaResult out;
    if (B.cols() == 0) return out;  // no inputs: every coefficient row is empty

    const int n = static_cast<int>(block.left_chain.cols());
    if (B.dimension() != n) throw InputError("input matrix dimension mismatch in gamma_set");
    const Matrix Bd = B.dense();

    // coefficient rows l_{i,k'}^T B for k' >= k
    std::vector<ComplexVector> rows;
    for (int kk = k; kk <= block.size; ++kk) {
        ComplexVector l = block.left_chain.row(kk - 1).transpose();
        rows.push_back(Bd.transpose().cast<Complex>() * l);
    }
    bool all_zero = true;
    for (const auto& r : rows)
        if (!near_zero_row(r, tau_zero)) all_zero = false;
    if (all_zero) {
        out.gcase = GammaCase::Empty;
        return out;
    }

    const ComplexVector r_k = block.right_chain.col(k - 1);

    if (block.is_real()) {
        bool has_nonneg = false, has_nonpos = false;
        for (const auto& row : rows) {
            const Vector re = row.real();
            if (nonneg_nonzero(re, tau_zero)) has_nonneg = true;
            if (nonneg_nonzero(-re, tau_zero)) has_nonpos = true;
        }
        const Vector r = r_k.real();
        if (has_nonneg && has_nonpos) {
            out.gcase = GammaCase::LinePair;
            out.generators.push_back(make_generator(r, block.index, k, GeneratorPart::PlusR, GeneratorKind::LineHalf));
            out.generators.push_back(make_generator(-r, block.index, k, GeneratorPart::MinusR, GeneratorKind::LineHalf));
        } else if (has_nonneg) {
            out.gcase = GammaCase::RayPlus;
            out.generators.push_back(make_generator(r, block.index, k, GeneratorPart::PlusR, GeneratorKind::Ray));
        } else if (has_nonpos) {
            out.gcase = GammaCase::RayMinus;
            out.generators.push_back(make_generator(-r, block.index, k, GeneratorPart::MinusR, GeneratorKind::Ray));
        } else {
            // rows of mixed sign only: both directions reachable
            out.gcase = GammaCase::PlanePair;
            out.generators.push_back(make_generator(r, block.index, k, GeneratorPart::PlusR, GeneratorKind::LineHalf));
            out.generators.push_back(make_generator(-r, block.index, k, GeneratorPart::MinusR, GeneratorKind::LineHalf));
        }
        return out;
    }

    // complex block with a nonzero coefficient somewhere: the whole plane
    out.gcase = GammaCase::PlanePair;
    const Vector re = r_k.real();
    const Vector im = r_k.imag();
    const double scale = std::max(re.norm(), im.norm());
    if (re.norm() > 1e-12 * scale * n) {
        out.generators.push_back(make_generator(re, block.index, k, GeneratorPart::PlusRe, GeneratorKind::LineHalf));
        out.generators.push_back(make_generator(-re, block.index, k, GeneratorPart::MinusRe, GeneratorKind::LineHalf));
    }
    if (im.norm() > 1e-12 * scale * n) {
        out.generators.push_back(make_generator(im, block.index, k, GeneratorPart::PlusIm, GeneratorKind::LineHalf));
        out.generators.push_back(make_generator(-im, block.index, k, GeneratorPart::MinusIm, GeneratorKind::LineHalf));
    }
    return out;
}

ReachableCone reachable_cone(const SpectralDecomposition& decomp, const InputMatrix& B,
                             double tau_zero) {
    if (B.cols() > 0 && B.dimension() != decomp.n)
        throw InputError("input matrix dimension does not match the decomposition");

    ReachableCone cone;
    cone.ambient_dim = decomp.n;

    std::vector<Vector> w_cols;
    for (const auto& blk : decomp.blocks) {
        if (!blk.is_representative()) continue;
        for (int k = 1; k <= blk.size; ++k) {
            GammaResult g = gamma_set(blk, k, B, tau_zero);
            cone.cases.push_back({blk.index, k, g.gcase});
            for (auto& gen : g.generators) cone.generators.push_back(gen);

            // spanning set of the lineality space
            if (blk.is_real()) {
                const bool both = g.gcase == GammaCase::LinePair || g.gcase == GammaCase::PlanePair;
                if (both) {
                    w_cols.push_back(blk.right_chain.col(k - 1).real().normalized());
                    cone.lineality_tags.push_back({blk.index, k, GeneratorPart::PlusR});
                }
            } else if (g.gcase == GammaCase::PlanePair) {
                const Vector re = blk.right_chain.col(k - 1).real();
                const Vector im = blk.right_chain.col(k - 1).imag();
                if (re.norm() > 0) {
                    w_cols.push_back(re.normalized());
                    cone.lineality_tags.push_back({blk.index, k, GeneratorPart::PlusRe});
                }
                if (im.norm() > 0) {
                    w_cols.push_back(im.normalized());
                    cone.lineality_tags.push_back({blk.index, k, GeneratorPart::PlusIm});
                }
            }
        }
    }

    cone.lineality_basis.resize(decomp.n, static_cast<int>(w_cols.size()));
    for (size_t j = 0; j < w_cols.size(); ++j) cone.lineality_basis.col(static_cast<int>(j)) = w_cols[j];

    if (w_cols.empty()) {
        cone.lineality_dim = 0;
    } else {
        Eigen::JacobiSVD<Matrix> svd(cone.lineality_basis);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-10 * sv(0)) ++rank;
        cone.lineality_dim = rank;
    }
    return cone;
}

bool cone_membership(const ReachableCone& cone, const Vector& x, double tau_lp) {
    if (x.size() != cone.ambient_dim) throw InputError("membership query dimension mismatch");
    const double scale = x.lpNorm<Eigen::Infinity>();
    if (scale <= tau_lp) return true;
    if (cone.generators.empty()) return false;
    auto f = lp::nonnegative_solution_exists(cone.generator_matrix(), x, tau_lp);
    return f.feasible;
}

double cone_membership_residual(const ReachableCone& cone, const Vector& x) {
    const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
    if (x.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
    if (cone.generators.empty()) return x.lpNorm<Eigen::Infinity>() / scale;
    auto f = lp::nonnegative_solution_exists(cone.generator_matrix(), x, 0.0);
    return f.residual;
}

bool controllable_membership(const SpectralDecomposition& decomp, const InputMatrix& B,
                             const ReachableCone& cone, const Vector& x,
                             const std::vector<double>& time_grid, double tau_lp) {
    if (x.size() != cone.ambient_dim) throw InputError("membership query dimension mismatch");
    const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
    if (x.lpNorm<Eigen::Infinity>() <= tau_lp) return true;

    // lineality membership via least squares
    if (cone.lineality_basis.cols() > 0) {
        Vector xi = cone.lineality_basis.colPivHouseholderQr().solve(x);
        if ((cone.lineality_basis * xi - x).lpNorm<Eigen::Infinity>() <= tau_lp * scale) return true;
    }
    for (double t : time_grid) {
        const Vector y = -(expm(decomp, t) * x);
        if (cone_membership(cone, y, tau_lp)) return true;
    }
    (void)B;
    return false;
}

QSet q_set(const ReachableCone& cone, double tau_lp) {
    QSet q;
    std::vector<Vector> cols;
    for (const auto& g : cone.generators) {
        if (g.kind != GeneratorKind::Ray) continue;
        // construction invariant: the opposite ray must not be reachable
        if (cone_membership(cone, -g.vector, tau_lp)) continue;
        cols.push_back(g.vector);
        q.tags.push_back({g.block, g.chain_index, g.part == GeneratorPart::PlusR ? +1 : -1});
    }
    q.columns.resize(cone.ambient_dim, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) q.columns.col(static_cast<int>(j)) = cols[j];
    return q;
}

int cone_dimension(const ReachableCone& cone, double tau_lp) {
    const int g = static_cast<int>(cone.generators.size());
    if (g == 0) return 0;
    const Matrix G = cone.generator_matrix();

    std::vector<bool> active(g, true);
    int count = g;
    for (int j = 0; j < g; ++j) {
        // collect the other active generators
        Matrix others(cone.ambient_dim, count - 1);
        int c = 0;
        for (int i = 0; i < g; ++i)
            if (active[i] && i != j) others.col(c++) = G.col(i);
        if (c == 0) break;
        auto f = lp::nonnegative_solution_exists(others, G.col(j), tau_lp);
        if (f.feasible) {
            active[j] = false;
            --count;
        }
    }
    return count;
}

}  // namespace unictrl
