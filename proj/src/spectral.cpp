#include "unictrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace unictrl {
namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

constexpr double kIndepTol = 1e-7;

// Orthonormal basis of the null space of M, singular values cut at
// rel_cut * sigma_max. Returns the nullity.
template <typename Scalar>
int null_space(const Mat<Scalar>& M, double rel_cut, Mat<Scalar>& basis) {
    Eigen::JacobiSVD<Mat<Scalar>> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_cut * smax) ++rank;
    const int n = static_cast<int>(M.cols());
    basis = svd.matrixV().rightCols(n - rank);
    return n - rank;
}

// Raw Jordan chains of Mt = (A - lambda I)^T for one eigenvalue cluster of
// algebraic multiplicity mult. Chains are ordered by decreasing block size;
// each chain runs head -> tail with Mt w_k = w_{k+1}. Throws SpectralError
// when the rank decisions are inconsistent at this tolerance.
template <typename Scalar>
std::vector<std::vector<Vec<Scalar>>> jordan_chains(const Mat<Scalar>& Mt, int mult, double tol) {
    const int n = static_cast<int>(Mt.rows());

    std::vector<int> d;                    // d[k-1] = nullity of Mt^k
    std::vector<Mat<Scalar>> null_bases;   // per power
    Mat<Scalar> P = Mat<Scalar>::Identity(n, n);
    int s = 0;
    for (int k = 1; k <= mult; ++k) {
        P = P * Mt;
        Mat<Scalar> basis;
        const int dk = null_space<Scalar>(P, tol, basis);
        const int prev = d.empty() ? 0 : d.back();
        if (dk <= prev || dk > mult) {
            std::ostringstream msg;
            msg << "jordan structure unresolved: nullity sequence stalls at power " << k
                << " (nullity " << dk << ", multiplicity " << mult << ")";
            throw SpectralError(msg.str());
        }
        d.push_back(dk);
        null_bases.push_back(std::move(basis));
        if (dk == mult) {
            s = k;
            break;
        }
    }
    if (s == 0)
        throw SpectralError("jordan structure unresolved: nullities never reach the multiplicity");

    // q[g] = number of blocks of size >= g; must be non-increasing
    std::vector<int> q(s + 2, 0);
    for (int g = 1; g <= s; ++g) q[g] = d[g - 1] - (g >= 2 ? d[g - 2] : 0);
    for (int g = 1; g < s; ++g)
        if (q[g + 1] > q[g])
            throw SpectralError("jordan structure unresolved: non-monotone block counts");

    std::vector<std::vector<Vec<Scalar>>> chains;

    // carried orthonormal context for independence tests at the current grade
    for (int g = s; g >= 1; --g) {
        // propagate existing chains down one grade
        for (auto& chain : chains) chain.push_back(Mt * chain.back());
        const int new_heads = q[g] - q[g + 1];
        if (new_heads == 0) continue;

        // base = null(Mt^{g-1}) plus the vectors already present at grade g
        std::vector<Vec<Scalar>> base_cols;
        if (g >= 2)
            for (int j = 0; j < null_bases[g - 2].cols(); ++j)
                base_cols.push_back(null_bases[g - 2].col(j));
        for (const auto& chain : chains) base_cols.push_back(chain.back().normalized());

        // grow an orthonormal basis and pick independent candidates from null(Mt^g)
        std::vector<Vec<Scalar>> ortho;
        auto project_out = [&ortho](Vec<Scalar> v) {
            for (const auto& u : ortho) v -= u * u.dot(v);
            // one re-orthogonalization pass for accuracy
            for (const auto& u : ortho) v -= u * u.dot(v);
            return v;
        };
        for (auto& bcol : base_cols) {
            Vec<Scalar> r = project_out(bcol);
            if (r.norm() > kIndepTol) ortho.push_back(r.normalized());
        }

        int placed = 0;
        const Mat<Scalar>& Ng = null_bases[g - 1];
        for (int j = 0; j < Ng.cols() && placed < new_heads; ++j) {
            Vec<Scalar> r = project_out(Ng.col(j));
            if (r.norm() > kIndepTol) {
                ortho.push_back(r.normalized());
                chains.push_back({r});
                ++placed;
            }
        }
        if (placed < new_heads)
            throw SpectralError("jordan chain heads could not be completed to a basis");
    }

    // order by decreasing length, stable
    std::stable_sort(chains.begin(), chains.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return chains;
}

// Unit-norm chain with positive couplings and tail phase fixed so that the
// largest-modulus entry of the tail is real and positive.
JordanBlock normalize_chain(const std::vector<ComplexVector>& raw, Complex lambda, int n) {
    const int nu = static_cast<int>(raw.size());
    JordanBlock blk;
    blk.eigenvalue = lambda;
    blk.size = nu;
    blk.left_chain.resize(nu, n);
    blk.couplings.resize(std::max(0, nu - 1));

    std::vector<double> norms(nu);
    for (int k = 0; k < nu; ++k) norms[k] = raw[k].norm();
    for (int k = 0; k < nu; ++k) blk.left_chain.row(k) = (raw[k] / norms[k]).transpose();
    for (int k = 0; k + 1 < nu; ++k) blk.couplings(k) = norms[k + 1] / norms[k];

    // phase from the tail
    const ComplexVector tail = blk.left_chain.row(nu - 1).transpose();
    int idx = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(tail(i));
        if (a > best + 1e-14) {
            best = a;
            idx = i;
        }
    }
    const Complex ph = tail(idx) / std::abs(tail(idx));
    blk.left_chain *= std::conj(ph);
    return blk;
}

struct Cluster {
    Complex rep;
    int mult = 0;
    bool real = false;
    int mirror_of = -1;  // index into the cluster list of the +Im partner
};

std::vector<Cluster> cluster_eigenvalues(const ComplexVector& evals, double theta) {
    const int n = static_cast<int>(evals.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(evals(i) - evals(j)) <= theta) parent[find(i)] = find(j);

    std::vector<Cluster> clusters;
    std::vector<int> root_of;
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        int ci = -1;
        for (size_t k = 0; k < root_of.size(); ++k)
            if (root_of[k] == r) ci = static_cast<int>(k);
        if (ci < 0) {
            root_of.push_back(r);
            clusters.push_back({});
            ci = static_cast<int>(clusters.size()) - 1;
        }
        clusters[ci].rep += evals(i);
        clusters[ci].mult += 1;
    }
    for (auto& c : clusters) {
        c.rep /= static_cast<double>(c.mult);
        if (std::abs(c.rep.imag()) <= theta) {
            c.rep = Complex(c.rep.real(), 0.0);
            c.real = true;
        }
    }
    // pair conjugate clusters
    for (size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].real || clusters[i].rep.imag() < 0) continue;
        int partner = -1;
        for (size_t j = 0; j < clusters.size(); ++j) {
            if (j == i || clusters[j].real) continue;
            if (std::abs(clusters[j].rep - std::conj(clusters[i].rep)) <= 2 * theta) partner = static_cast<int>(j);
        }
        if (partner < 0 || clusters[partner].mult != clusters[i].mult)
            throw SpectralError("complex eigenvalue cluster lacks a conjugate partner");
        clusters[partner].rep = std::conj(clusters[i].rep);
        clusters[partner].mirror_of = static_cast<int>(i);
    }
    for (const auto& c : clusters)
        if (!c.real && c.rep.imag() < 0 && c.mirror_of < 0)
            throw SpectralError("complex eigenvalue cluster lacks a conjugate partner");
    return clusters;
}

// Finalize T, Tinv, right chains; verify T A = J T.
void assemble(SpectralDecomposition& dec, const Matrix& A) {
    const int n = dec.n;
    dec.T.resize(n, n);
    int off = 0;
    for (auto& blk : dec.blocks) {
        dec.T.block(off, 0, blk.size, n) = blk.left_chain;
        off += blk.size;
    }
    if (off != n) throw SpectralError("block sizes do not partition the dimension");

    Eigen::FullPivLU<ComplexMatrix> lu(dec.T);
    if (!lu.isInvertible())
        throw SpectralError("left chain matrix is numerically singular; chains did not converge");
    dec.Tinv = lu.inverse();

    off = 0;
    for (auto& blk : dec.blocks) {
        blk.right_chain = dec.Tinv.block(0, off, n, blk.size);
        off += blk.size;
    }

    const ComplexMatrix J = dec.jordan_matrix();
    const double resid = (dec.T * A.cast<Complex>() - J * dec.T).cwiseAbs().maxCoeff();
    const double limit = 1e-5 * std::max(1.0, A.cwiseAbs().maxCoeff()) * n;
    if (resid > limit) {
        std::ostringstream msg;
        msg << "chain construction did not converge: |TA - JT| = " << resid
            << " exceeds " << limit << " (eig tolerance " << dec.eig_tolerance << ")";
        throw SpectralError(msg.str());
    }
}

}  // namespace

int SpectralDecomposition::block_offset(int bi) const {
    int off = 0;
    for (int i = 0; i < bi; ++i) off += blocks[i].size;
    return off;
}

ComplexMatrix SpectralDecomposition::jordan_matrix() const {
    ComplexMatrix J = ComplexMatrix::Zero(n, n);
    int off = 0;
    for (const auto& blk : blocks) {
        for (int k = 0; k < blk.size; ++k) {
            J(off + k, off + k) = blk.eigenvalue;
            if (k + 1 < blk.size) J(off + k, off + k + 1) = blk.couplings(k);
        }
        off += blk.size;
    }
    return J;
}

SpectralDecomposition compute_spectrum(const Matrix& A, double tol) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InputError("dynamics matrix must be square and non-empty");
    if (!A.allFinite()) throw InputError("dynamics matrix has non-finite entries");
    if (!(tol > 0)) throw InputError("eigenvalue tolerance must be positive");

    const int n = static_cast<int>(A.rows());
    const double theta = tol * std::max(1.0, A.cwiseAbs().rowwise().sum().maxCoeff());

    Eigen::EigenSolver<Matrix> es(A);
    if (es.info() != Eigen::Success) throw SpectralError("eigenvalue iteration failed");

    auto clusters = cluster_eigenvalues(es.eigenvalues(), theta);

    // order: real part descending, |Im| ascending, +Im before -Im
    std::vector<int> order(clusters.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex& x = clusters[a].rep;
        const Complex& y = clusters[b].rep;
        if (x.real() != y.real()) return x.real() > y.real();
        if (std::abs(x.imag()) != std::abs(y.imag())) return std::abs(x.imag()) < std::abs(y.imag());
        return x.imag() > y.imag();
    });

    // build chains for representatives
    std::vector<std::vector<JordanBlock>> groups(clusters.size());
    for (size_t ci = 0; ci < clusters.size(); ++ci) {
        const Cluster& c = clusters[ci];
        if (c.mirror_of >= 0) continue;
        if (c.real) {
            Matrix Mt = A.transpose() - c.rep.real() * Matrix::Identity(n, n);
            auto raw = jordan_chains<double>(Mt, c.mult, tol);
            for (const auto& chain : raw) {
                std::vector<ComplexVector> cc;
                for (const auto& w : chain) cc.push_back(w.cast<Complex>());
                groups[ci].push_back(normalize_chain(cc, c.rep, n));
            }
        } else {
            ComplexMatrix Mt = A.cast<Complex>().transpose() - c.rep * ComplexMatrix::Identity(n, n);
            auto raw = jordan_chains<Complex>(Mt, c.mult, tol);
            for (const auto& chain : raw) groups[ci].push_back(normalize_chain(chain, c.rep, n));
        }
    }

    SpectralDecomposition dec;
    dec.n = n;
    dec.eig_tolerance = tol;

    // emit in sorted order; mirrors are conjugated copies of their partner
    std::vector<int> rep_block_start(clusters.size(), -1);
    for (int ci : order) {
        const Cluster& c = clusters[ci];
        if (c.mirror_of < 0) {
            rep_block_start[ci] = static_cast<int>(dec.blocks.size());
            for (auto& blk : groups[ci]) {
                blk.index = static_cast<int>(dec.blocks.size());
                dec.blocks.push_back(blk);
            }
        } else {
            const int start = rep_block_start[c.mirror_of];
            // copy every block of the partner cluster, conjugated
            const int partner_blocks = static_cast<int>(groups[c.mirror_of].size());
            for (int bi = 0; bi < partner_blocks; ++bi) {
                const JordanBlock& src = dec.blocks[start + bi];
                JordanBlock blk;
                blk.index = static_cast<int>(dec.blocks.size());
                blk.eigenvalue = std::conj(src.eigenvalue);
                blk.size = src.size;
                blk.left_chain = src.left_chain.conjugate();
                blk.couplings = src.couplings;
                blk.conjugate_of = src.index;
                dec.blocks.push_back(blk);
            }
        }
    }

    assemble(dec, A);
    return dec;
}

namespace {

// Remix the raw chains of same-size blocks so that a maximal number of
// chains is entirely orthogonal to the columns of B.
template <typename Scalar>
void remix_group(std::vector<JordanBlock>& blocks, const std::vector<int>& members,
                 const Matrix& Bd, double tau_zero, int n) {
    const int b = static_cast<int>(members.size());
    const int nu = blocks[members[0]].size;
    const int m = static_cast<int>(Bd.cols());

    // de-normalized raw chains, each rescaled to unit max element norm
    std::vector<std::vector<Vec<Scalar>>> raw(b);
    for (int j = 0; j < b; ++j) {
        const JordanBlock& blk = blocks[members[j]];
        std::vector<Vec<Scalar>> w(nu);
        double scale = 1.0;
        double maxn = 0.0;
        for (int k = 0; k < nu; ++k) {
            ComplexVector row = blk.left_chain.row(k).transpose();
            Vec<Scalar> v;
            if constexpr (std::is_same_v<Scalar, double>)
                v = row.real();
            else
                v = row;
            w[k] = scale * v;
            maxn = std::max(maxn, w[k].norm());
            if (k + 1 < nu) scale *= blk.couplings(k);
        }
        for (auto& v : w) v /= maxn;
        raw[j] = std::move(w);
    }

    // stacked orthogonality system: alpha in null(S) makes a fully
    // B-orthogonal chain
    Mat<Scalar> S(nu * m, b);
    for (int j = 0; j < b; ++j)
        for (int k = 0; k < nu; ++k)
            S.block(k * m, j, m, 1) = Bd.transpose().cast<Scalar>() * raw[j][k];

    Eigen::JacobiSVD<Mat<Scalar>> svd(S, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cut = tau_zero * std::max(1.0, smax);
    std::vector<int> null_cols, range_cols;
    for (int j = 0; j < b; ++j) {
        const double s = j < sv.size() ? sv(j) : 0.0;
        (s <= cut ? null_cols : range_cols).push_back(j);
    }
    if (null_cols.empty()) return;  // nothing to gain

    // orthogonal chains first, then the rest
    std::vector<int> cols = null_cols;
    cols.insert(cols.end(), range_cols.begin(), range_cols.end());

    for (int jj = 0; jj < b; ++jj) {
        const auto alpha = svd.matrixV().col(cols[jj]);
        std::vector<ComplexVector> mixed(nu, ComplexVector::Zero(n));
        for (int k = 0; k < nu; ++k) {
            Vec<Scalar> acc = Vec<Scalar>::Zero(n);
            for (int i = 0; i < b; ++i) acc += alpha(i) * raw[i][k];
            if constexpr (std::is_same_v<Scalar, double>)
                mixed[k] = acc.template cast<Complex>();
            else
                mixed[k] = acc;
        }
        JordanBlock nb = normalize_chain(mixed, blocks[members[jj]].eigenvalue, n);
        nb.index = blocks[members[jj]].index;
        nb.conjugate_of = blocks[members[jj]].conjugate_of;
        blocks[members[jj]].left_chain = nb.left_chain;
        blocks[members[jj]].couplings = nb.couplings;
    }
}

}  // namespace

SpectralDecomposition select_left_chains(const SpectralDecomposition& decomp,
                                         const InputMatrix& B, double tau_zero) {
    if (B.cols() == 0) return decomp;
    if (B.dimension() != decomp.n)
        throw InputError("input matrix dimension does not match the decomposition");

    SpectralDecomposition dec = decomp;
    const Matrix Bd = B.dense();

    // group representative blocks by eigenvalue and size
    std::vector<bool> done(dec.blocks.size(), false);
    for (size_t i = 0; i < dec.blocks.size(); ++i) {
        if (done[i] || !dec.blocks[i].is_representative()) continue;
        std::vector<int> members;
        for (size_t j = i; j < dec.blocks.size(); ++j) {
            if (done[j] || !dec.blocks[j].is_representative()) continue;
            if (dec.blocks[j].eigenvalue == dec.blocks[i].eigenvalue &&
                dec.blocks[j].size == dec.blocks[i].size) {
                members.push_back(static_cast<int>(j));
                done[j] = true;
            }
        }
        if (members.size() < 2) continue;
        if (dec.blocks[i].is_real())
            remix_group<double>(dec.blocks, members, Bd, tau_zero, dec.n);
        else
            remix_group<Complex>(dec.blocks, members, Bd, tau_zero, dec.n);
    }

    // refresh the conjugated copies
    for (auto& blk : dec.blocks) {
        if (blk.conjugate_of < 0) continue;
        const JordanBlock& src = dec.blocks[blk.conjugate_of];
        blk.left_chain = src.left_chain.conjugate();
        blk.couplings = src.couplings;
    }

    // rebuild the stacked matrices; A is recovered from the old decomposition
    const ComplexMatrix Ac = decomp.Tinv * decomp.jordan_matrix() * decomp.T;
    assemble(dec, Ac.real());
    return dec;
}

namespace {

// integrals of s^p exp(lambda s) over [0, t]
std::vector<Complex> power_exp_integrals(Complex lam, double t, int pmax) {
    std::vector<Complex> I(pmax + 1);
    if (std::abs(lam) * t < 0.4) {
        // sum_j lam^j t^{p+j+1} / (j! (p+j+1))
        for (int p = 0; p <= pmax; ++p) {
            Complex sum = 0.0;
            Complex pow_lam = 1.0;
            double fact = 1.0;
            for (int j = 0; j < 60; ++j) {
                const Complex contrib = pow_lam * std::pow(t, p + j + 1) / (fact * (p + j + 1));
                sum += contrib;
                if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(sum))) break;
                pow_lam *= lam;
                fact *= (j + 1);
            }
            I[p] = sum;
        }
    } else {
        I[0] = (std::exp(lam * t) - 1.0) / lam;
        for (int p = 1; p <= pmax; ++p)
            I[p] = (std::pow(t, p) * std::exp(lam * t) - static_cast<double>(p) * I[p - 1]) / lam;
    }
    return I;
}

Matrix apply_block_function(const SpectralDecomposition& dec, bool integral, double t) {
    const int n = dec.n;
    ComplexMatrix F = ComplexMatrix::Zero(n, n);
    int off = 0;
    for (const auto& blk : dec.blocks) {
        const Complex lam = blk.eigenvalue;
        std::vector<Complex> base;
        if (integral) {
            base = power_exp_integrals(lam, t, blk.size - 1);
        } else {
            base.resize(blk.size);
            for (int p = 0; p < blk.size; ++p) base[p] = std::pow(t, p) * std::exp(lam * t);
        }
        for (int k = 0; k < blk.size; ++k) {
            double coupling = 1.0;
            double fact = 1.0;
            for (int p = k; p < blk.size; ++p) {
                if (p > k) {
                    coupling *= blk.couplings(p - 1);
                    fact *= (p - k);
                }
                F(off + k, off + p) = base[p - k] / fact * coupling;
            }
        }
        off += blk.size;
    }
    const ComplexMatrix X = dec.Tinv * F * dec.T;
    return X.real();
}

}  // namespace

Matrix expm(const SpectralDecomposition& decomp, double t) {
    return apply_block_function(decomp, false, t);
}

Matrix expm_integral(const SpectralDecomposition& decomp, double t) {
    return apply_block_function(decomp, true, t);
}

}  // namespace unictrl
