#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "unictrl/greedy.hpp"
#include "unictrl/oracle.hpp"
#include "unictrl/types.hpp"

namespace unictrl {

/// Parsed problem input: the dynamics matrix, the input columns (possibly
/// empty), and an optional budget m.
struct ProblemInput {
    Matrix A;
    std::vector<SignedVersor> B_columns;
    std::optional<int> m;
};

/// Reads a JSON problem file {"A": [[...]], "B": [{"node":..,"sign":..}],
/// "m": ...} or a plain dense CSV matrix (B must then come from b_flag).
/// b_flag, when non-empty, overrides any B from the file.
ProblemInput load_problem(const std::string& path, const std::string& b_flag = "");

nlohmann::json analyze_report(const Matrix& A, const PlacementResult& result,
                              const Tolerances& tol);
nlohmann::json place_report(const Matrix& A, const PlacementResult& result,
                            const Tolerances& tol, int m);
nlohmann::json verify_report(const Matrix& A, const InputMatrix& B,
                             const AgreementReport& report, const SweepOptions& opts);

/// Graphviz rendering with driver nodes in red and the controllable
/// subset filled.
std::string dot_export(const Matrix& A, const std::vector<SignedVersor>& drivers,
                       const NodeSubset& controllable);

/// Nearest double to v printed with 12 significant digits.
double round_sig(double v);

}  // namespace unictrl
