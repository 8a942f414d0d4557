#include "unictrl/report.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "unictrl/subset.hpp"

namespace unictrl {
namespace {

using nlohmann::json;

const char* case_name(GammaCase c) {
    switch (c) {
        case GammaCase::Empty: return "empty";
        case GammaCase::LinePair: return "line_pair";
        case GammaCase::RayPlus: return "ray_plus";
        case GammaCase::RayMinus: return "ray_minus";
        case GammaCase::PlanePair: return "plane_pair";
    }
    return "?";
}

const char* part_name(GeneratorPart p) {
    switch (p) {
        case GeneratorPart::PlusR: return "+r";
        case GeneratorPart::MinusR: return "-r";
        case GeneratorPart::PlusRe: return "+re";
        case GeneratorPart::MinusRe: return "-re";
        case GeneratorPart::PlusIm: return "+im";
        case GeneratorPart::MinusIm: return "-im";
    }
    return "?";
}

json vec_to_json(const Vector& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(round_sig(v(i)));
    return a;
}

json matrix_to_json(const Matrix& M, bool rounded) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(rounded ? round_sig(M(i, j)) : M(i, j));
        rows.push_back(row);
    }
    return rows;
}

json versors_to_json(const std::vector<SignedVersor>& cols) {
    json a = json::array();
    for (const auto& c : cols) a.push_back({{"node", c.node}, {"sign", c.sign}});
    return a;
}

json tolerances_to_json(const Tolerances& tol) {
    return {{"eig", tol.eig}, {"zero", tol.zero}, {"lp", tol.lp}};
}

json spectrum_to_json(const SpectralDecomposition& dec) {
    json blocks = json::array();
    for (const auto& blk : dec.blocks) {
        blocks.push_back({{"block", blk.index},
                          {"eigenvalue", {{"re", round_sig(blk.eigenvalue.real())},
                                          {"im", round_sig(blk.eigenvalue.imag())}}},
                          {"size", blk.size}});
    }
    return {{"blocks", blocks}, {"eig_tolerance", dec.eig_tolerance}};
}

json cone_to_json(const ReachableCone& cone, const QSet& q) {
    json cases = json::array();
    for (const auto& rec : cone.cases)
        cases.push_back({{"block", rec.block}, {"chain_index", rec.chain_index},
                         {"case", case_name(rec.gcase)}});
    json gens = json::array();
    for (const auto& g : cone.generators)
        gens.push_back({{"block", g.block}, {"chain_index", g.chain_index},
                        {"part", part_name(g.part)},
                        {"kind", g.kind == GeneratorKind::Ray ? "ray" : "line_half"},
                        {"vector", vec_to_json(g.vector)}});
    json wtags = json::array();
    for (const auto& t : cone.lineality_tags)
        wtags.push_back({{"block", t.block}, {"chain_index", t.chain_index},
                         {"part", part_name(t.part)}});
    json qtags = json::array();
    for (const auto& t : q.tags)
        qtags.push_back({{"block", t.block}, {"chain_index", t.chain_index}, {"sign", t.sign}});
    return {{"cases", cases},
            {"generators", gens},
            {"lineality", {{"dim", cone.lineality_dim},
                           {"basis", matrix_to_json(cone.lineality_basis, true)},
                           {"tags", wtags}}},
            {"q", {{"columns", matrix_to_json(q.columns, true)}, {"tags", qtags}}}};
}

json result_body(const Matrix& A, const PlacementResult& res, const Tolerances& tol) {
    json per_node = json::array();
    for (int i = 1; i <= static_cast<int>(A.rows()); ++i) {
        const bool ok = is_subset_controllable(res.cone, NodeSubset({i}, res.cone.ambient_dim),
                                               tol.zero, tol.lp);
        per_node.push_back({{"node", i}, {"controllable", ok}});
    }
    return {{"tolerances", tolerances_to_json(tol)},
            {"input", {{"n", static_cast<int>(A.rows())},
                       {"A", matrix_to_json(A, false)},
                       {"B", versors_to_json(res.B.columns())}}},
            {"spectrum", spectrum_to_json(res.decomp)},
            {"cone", cone_to_json(res.cone, res.Q)},
            {"controllable_subset", {{"Vs", res.Vs.indices()},
                                     {"Vs1", res.Vs1.indices()},
                                     {"matching_saturated", res.matching_saturated}}},
            {"per_node", per_node}};
}

json trace_to_json(const std::vector<IterationRecord>& trace) {
    json arr = json::array();
    for (const auto& rec : trace) {
        json singles = json::array();
        for (const auto& ev : rec.singles) {
            json e = {{"beta", format_versor(ev.beta)}, {"lineality", ev.lineality},
                      {"delta", ev.delta}};
            if (ev.cone_dim >= 0) e["cone_dim"] = ev.cone_dim;
            singles.push_back(e);
        }
        json pairs = json::array();
        for (const auto& ev : rec.pairs)
            pairs.push_back({{"beta", format_versor(ev.beta)}, {"lineality", ev.lineality},
                             {"delta", ev.delta}});
        json chosen = json::array();
        for (const auto& c : rec.chosen) chosen.push_back(format_versor(c));
        arr.push_back({{"step", rec.step},
                       {"overridden", rec.overridden},
                       {"pair_added", rec.pair_added},
                       {"pair_branch_blocked", rec.pair_branch_blocked},
                       {"trailing_single", rec.trailing_single},
                       {"candidates", singles},
                       {"pair_candidates", pairs},
                       {"chosen", chosen},
                       {"lineality_after", rec.lineality_after},
                       {"generators_after", rec.generators_after}});
    }
    return arr;
}

}  // namespace

double round_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

ProblemInput load_problem(const std::string& path, const std::string& b_flag) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    ProblemInput out;
    std::string first_line;
    std::streampos start = in.tellg();
    std::getline(in, first_line);
    in.seekg(start);

    const bool looks_json = first_line.find('{') != std::string::npos;
    if (looks_json) {
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw InputError("JSON parse error in " + path + ": " + e.what());
        }
        if (!doc.contains("A") || !doc["A"].is_array())
            throw InputError(path + ": missing or non-array field \"A\"");
        const auto& rows = doc["A"];
        const int n = static_cast<int>(rows.size());
        out.A.resize(n, n);
        for (int i = 0; i < n; ++i) {
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
                throw InputError(path + ": row " + std::to_string(i + 1) +
                                 " of \"A\" must have " + std::to_string(n) + " entries");
            for (int j = 0; j < n; ++j) {
                if (!rows[i][j].is_number())
                    throw InputError(path + ": A[" + std::to_string(i + 1) + "][" +
                                     std::to_string(j + 1) + "] is not a real number");
                out.A(i, j) = rows[i][j].get<double>();
            }
        }
        if (doc.contains("B")) {
            if (!doc["B"].is_array()) throw InputError(path + ": field \"B\" must be an array");
            for (const auto& col : doc["B"]) {
                if (!col.contains("node") || !col.contains("sign"))
                    throw InputError(path + ": every \"B\" column needs \"node\" and \"sign\"");
                out.B_columns.push_back({col["node"].get<int>(), col["sign"].get<int>()});
            }
        }
        if (doc.contains("m")) out.m = doc["m"].get<int>();
    } else {
        // dense CSV
        std::vector<std::vector<double>> rows;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            std::vector<double> row;
            std::stringstream ls(line);
            std::string cell;
            int field = 0;
            while (std::getline(ls, cell, ',')) {
                ++field;
                char* end = nullptr;
                const double v = std::strtod(cell.c_str(), &end);
                while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
                if (!end || *end != '\0')
                    throw InputError(path + ": line " + std::to_string(lineno) + ", field " +
                                     std::to_string(field) + ": not a number: '" + cell + "'");
                row.push_back(v);
            }
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw InputError(path + ": empty matrix");
        const int n = static_cast<int>(rows.size());
        for (int i = 0; i < n; ++i)
            if (static_cast<int>(rows[i].size()) != n)
                throw InputError(path + ": line " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " fields, expected " +
                                 std::to_string(n));
        out.A.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.A(i, j) = rows[i][j];
    }

    if (!b_flag.empty()) out.B_columns = parse_versor_list(b_flag);
    return out;
}

nlohmann::json analyze_report(const Matrix& A, const PlacementResult& result,
                              const Tolerances& tol) {
    json doc = result_body(A, result, tol);
    doc["command"] = "analyze";
    return doc;
}

nlohmann::json place_report(const Matrix& A, const PlacementResult& result,
                            const Tolerances& tol, int m) {
    json doc = result_body(A, result, tol);
    doc["command"] = "place";
    doc["m"] = m;
    doc["trace"] = trace_to_json(result.trace);
    return doc;
}

nlohmann::json verify_report(const Matrix& A, const InputMatrix& B,
                             const AgreementReport& report, const SweepOptions& opts) {
    json dis = json::array();
    for (const auto& d : report.disagreements)
        dis.push_back({{"sample", d.sample},
                       {"target", vec_to_json(d.target)},
                       {"cone_says", d.cone_says},
                       {"oracle_says", d.oracle_says},
                       {"cone_residual", round_sig(d.cone_residual)},
                       {"oracle_residual", round_sig(d.oracle_residual)},
                       {"near_boundary", d.near_boundary}});
    return {{"command", "verify"},
            {"tolerances", tolerances_to_json(opts.tol)},
            {"input", {{"n", static_cast<int>(A.rows())},
                       {"A", matrix_to_json(A, false)},
                       {"B", versors_to_json(B.columns())}}},
            {"samples", report.total},
            {"horizons", opts.horizons},
            {"steps", opts.steps},
            {"agreements", report.agreements},
            {"fraction", round_sig(report.fraction)},
            {"disagreements", dis}};
}

std::string dot_export(const Matrix& A, const std::vector<SignedVersor>& drivers,
                       const NodeSubset& controllable) {
    const int n = static_cast<int>(A.rows());
    std::vector<bool> is_driver(n + 1, false);
    for (const auto& d : drivers) is_driver[d.node] = true;

    std::ostringstream os;
    os << "digraph network {\n";
    os << "  node [shape=circle];\n";
    for (int i = 1; i <= n; ++i) {
        os << "  " << i << " [";
        bool first = true;
        if (is_driver[i]) {
            os << "color=red, penwidth=2";
            first = false;
        }
        if (controllable.contains(i)) {
            if (!first) os << ", ";
            os << "style=filled, fillcolor=lightblue";
            first = false;
        }
        if (first) os << "color=black";
        os << "];\n";
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) != 0.0) {
                os << "  " << (j + 1) << " -> " << (i + 1);
                if (i == j) os << " [style=dotted]";
                os << ";\n";
            }
    os << "}\n";
    return os.str();
}

}  // namespace unictrl
