#include "apzeta/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace apzeta;

int main(int argc, char** argv) {
    CLI::App app{"Zeta evaluation by arithmetic-progression series"};
    app.require_subcommand(1);

    CoeffsOptions coeffs;
    std::string coeffs_out;
    auto* c = app.add_subcommand("coeffs", "Generate and store the coefficient fixture for m");
    c->add_option("--m", coeffs.m, "Modulus")->required();
    c->add_option("--out", coeffs_out, "Fixture path (default: fixture directory)");

    EvalCommand eval;
    std::string eval_s, eval_mode = "seq";
    auto* e = app.add_subcommand("eval", "Evaluate the truncated series at s");
    e->add_option("--m", eval.m, "Modulus")->required();
    e->add_option("--s", eval_s, "Point as RE,IM")->required();
    e->add_option("--n", eval.N, "Number of outer blocks")->required();
    e->add_option("--mode", eval_mode, "seq or par");
    e->add_flag("--limit", eval.limit, "Derivative quotient at a removable 0/0 point");
    e->add_flag("--explore", eval.explore, "Allow Re(s) at or below the convergence abscissa");

    MinNCommand min_n;
    std::string targets, min_grid, min_out;
    auto* n = app.add_subcommand("min-n", "Smallest grid N meeting each target on Re(s) = sigma");
    n->add_option("--m", min_n.m, "Modulus")->required();
    n->add_option("--t", min_n.t, "Imaginary part of s")->required();
    n->add_option("--sigma", min_n.sigma, "Real part of s (default 0.5)");
    n->add_option("--targets", targets, "Decreasing list, e.g. 1e-3,1e-4")->required();
    n->add_option("--grid", min_grid, "START:STOP:STEP")->required();
    n->add_option("--out", min_out, "CSV path (default: stdout)");

    CurveCommand curve;
    std::string curve_s = "0.5,100000", curve_grid, curve_out;
    auto* cv = app.add_subcommand("curve", "Absolute error for every grid N");
    cv->add_option("--m", curve.m, "Modulus")->required();
    cv->add_option("--s", curve_s, "Point as RE,IM (default 0.5,100000)");
    cv->add_option("--grid", curve_grid, "START:STOP:STEP")->required();
    cv->add_option("--out", curve_out, "CSV path (default: stdout)");
    cv->add_flag("--explore", curve.explore, "Allow Re(s) at or below the convergence abscissa");

    std::string suite;
    auto* v = app.add_subcommand("verify", "Run the invariant suites");
    v->add_option("--suite", suite, "One suite name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? exit_ok : exit_precondition;
    }

    try {
        if (*c) {
            if (!coeffs_out.empty()) coeffs.out = coeffs_out;
            return cmd_coeffs(coeffs, std::cout);
        }
        if (*e) {
            eval.s = parse_complex(eval_s);
            eval.mode = parse_mode(eval_mode);
            return cmd_eval(eval, std::cout);
        }
        if (*n) {
            min_n.targets = parse_targets(targets);
            min_n.grid = parse_grid(min_grid);
            if (!min_out.empty()) min_n.out = min_out;
            return cmd_min_n(min_n, std::cout);
        }
        if (*cv) {
            curve.s = parse_complex(curve_s);
            curve.grid = parse_grid(curve_grid);
            if (!curve_out.empty()) curve.out = curve_out;
            return cmd_curve(curve, std::cout);
        }
        return cmd_verify(suite.empty() ? std::nullopt : std::optional<std::string>(suite), std::cout);
    } catch (const std::exception& ex) {
        return exit_code_for(ex, std::cerr);
    }
}
