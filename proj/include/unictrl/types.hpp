#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unictrl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Raised when the spectral decomposition cannot be completed at the
/// requested tolerance (unstable rank decisions, singular chain basis).
struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the LP solver itself fails (iteration limit), as opposed
/// to reporting a well-posed infeasibility.
struct LpFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised on malformed user input (files, flags, out-of-range arguments).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the simulation oracle on numeric blowup (horizon too long
/// for a strongly unstable system).
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical thresholds used throughout. Defaults follow the project
/// conventions: eigenvalue clustering at eig*max(1,norm(A)), sign
/// category decisions at zero, LP feasibility at lp.
struct Tolerances {
    double eig = 1e-8;
    double zero = 1e-9;
    double lp = 1e-7;
};

/// One admissible input column: a standard basis vector or its negation.
/// Nodes are 1-based to match the usual node labelling.
struct SignedVersor {
    int node = 0;
    int sign = +1;

    bool operator==(const SignedVersor&) const = default;
};

/// Input matrix B whose columns are signed versors.
class InputMatrix {
public:
    InputMatrix() = default;
    InputMatrix(int n, std::vector<SignedVersor> columns);

    int dimension() const { return n_; }
    int cols() const { return static_cast<int>(columns_.size()); }
    const std::vector<SignedVersor>& columns() const { return columns_; }

    /// Dense n x m realization.
    Matrix dense() const;

    InputMatrix appended(SignedVersor beta) const;

private:
    int n_ = 0;
    std::vector<SignedVersor> columns_;
};

/// Sorted, duplicate-free set of 1-based node indices.
class NodeSubset {
public:
    NodeSubset() = default;
    NodeSubset(std::vector<int> indices, int n);

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    bool contains(int node) const;

    void insert(int node);

private:
    std::vector<int> indices_;
};

/// Parses a comma-separated versor list such as "-e6,-e2" or "+e1,e3".
std::vector<SignedVersor> parse_versor_list(const std::string& text);
std::string format_versor(const SignedVersor& v);

}  // namespace unictrl
