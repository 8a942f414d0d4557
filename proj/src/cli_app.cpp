#include "unictrl/cli_app.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "unictrl/greedy.hpp"
#include "unictrl/oracle.hpp"
#include "unictrl/report.hpp"

namespace unictrl {
namespace {

void write_output(const nlohmann::json& doc, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << doc.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw InputError("cannot write output file: " + out_path);
        f << doc.dump(2) << "\n";
    }
}

void write_dot(const std::string& dot_path, const Matrix& A, const PlacementResult& res) {
    if (dot_path.empty()) return;
    std::ofstream f(dot_path);
    if (!f) throw InputError("cannot write DOT file: " + dot_path);
    f << dot_export(A, res.B.columns(), res.Vs);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"unilateral-input network controllability analysis"};
    app.require_subcommand(1);

    Tolerances tol;
    std::string input_path, out_path, dot_path, b_flag, override_flag;
    int m = 0;
    unsigned seed = 0;
    bool seed_set = false;
    SweepOptions sweep;
    double threshold = 0.98;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path, "problem file (JSON, or dense CSV matrix)")
            ->required();
        cmd->add_option("--tol-eig", tol.eig, "eigenvalue clustering tolerance");
        cmd->add_option("--tol-zero", tol.zero, "sign/zero decision tolerance");
        cmd->add_option("--tol-lp", tol.lp, "LP feasibility tolerance");
        cmd->add_option("--input-b", b_flag, "B columns as a versor list, e.g. \"-e6,-e2\"");
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "cone / subset analysis for a given B");
    add_common(analyze);
    analyze->add_option("--dot", dot_path, "export the network as Graphviz DOT");

    CLI::App* place = app.add_subcommand("place", "greedy placement of m unilateral inputs");
    add_common(place);
    place->add_option("-m,--inputs", m, "input budget (number of B columns)");
    place->add_option("--override", override_flag,
                      "forced column choices, consumed in order (e.g. \"-e6,-e2\")");
    place->add_option("--seed", seed, "random tie-breaking with this seed")
        ->each([&](const std::string&) { seed_set = true; });
    place->add_option("--dot", dot_path, "export the network as Graphviz DOT");

    CLI::App* verify = app.add_subcommand("verify", "simulation-oracle agreement sweep");
    add_common(verify);
    verify->add_option("--samples", sweep.sphere_samples, "unit-sphere targets to test");
    verify->add_option("--horizon", sweep.horizons, "horizon grid (repeatable)");
    verify->add_option("--steps", sweep.steps, "input intervals per horizon");
    verify->add_option("--threshold", threshold, "minimum agreement fraction for exit 0");
    verify->add_option("--seed", sweep.seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        ProblemInput problem = load_problem(input_path, b_flag);

        if (analyze->parsed()) {
            if (problem.B_columns.empty())
                throw InputError("analyze needs B (in the file or via --input-b)");
            InputMatrix B(static_cast<int>(problem.A.rows()), problem.B_columns);
            PlacementResult res = evaluate_placement(problem.A, B, tol);
            write_output(analyze_report(problem.A, res, tol), out_path, out);
            write_dot(dot_path, problem.A, res);
        } else if (place->parsed()) {
            int budget = m > 0 ? m : problem.m.value_or(0);
            if (budget < 1) throw InputError("place needs a positive input budget (-m or \"m\" in the file)");
            GreedyOptions opts;
            opts.tol = tol;
            if (!override_flag.empty()) opts.overrides = parse_versor_list(override_flag);
            if (seed_set) opts.random_seed = seed;
            PlacementResult res = place_inputs(problem.A, budget, opts);
            write_output(place_report(problem.A, res, tol, budget), out_path, out);
            write_dot(dot_path, problem.A, res);
        } else if (verify->parsed()) {
            if (problem.B_columns.empty())
                throw InputError("verify needs B (in the file or via --input-b)");
            InputMatrix B(static_cast<int>(problem.A.rows()), problem.B_columns);
            sweep.tol = tol;
            AgreementReport rep = sweep_agreement(problem.A, B, sweep);
            write_output(verify_report(problem.A, B, rep, sweep), out_path, out);
            if (rep.fraction < threshold) {
                err << "agreement " << rep.fraction << " below threshold " << threshold << "\n";
                return 1;
            }
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "analysis error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace unictrl
