#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "multipack/commands.hpp"

int main(int argc, char** argv) {
    using namespace multipack::cli;
    CLI::App app{"Multipackings of planar and linear point sets"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: MULTIPACK_THREADS or 1)");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "maximum r-multipacking of a point set");
    solve_cmd->add_option("input,--input", solve.input, "CSV or JSON point file")->required();
    solve_cmd->add_option("--r", solve.radius, "radius (integer or 'full')");
    solve_cmd->add_option("--method", solve.method, "auto|greedy1d|nng|exact|fpt|greedy|brute");
    solve_cmd->add_option("--k", solve.k, "target size for fpt");
    solve_cmd->add_option("--out,-o", solve.output, "write JSON here instead of stdout");
    solve_cmd->add_option("--node-budget", solve.node_budget, "search node limit for exact");
    solve_cmd->add_option("--brute-limit", solve.brute_limit, "largest n accepted by brute");
    solve_cmd->add_flag("--timing", solve.timing, "include elapsed_ms in stats");

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "validate a candidate multipacking");
    check_cmd->add_option("input,--input", check.input, "point file")->required();
    check_cmd->add_option("--set", check.set, "JSON witness: [i,...] or {\"indices\":[...],\"r\":R}")->required();
    check_cmd->add_option("--r", check.radius, "radius (overrides the set file)");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance as CSV");
    gen_cmd->add_option("family,--family", gen.family, "lower1d|upper1d|pentagon|square4|random")->required();
    gen_cmd->add_option("--n", gen.n, "number of points");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--dim", gen.dim, "1 or 2 (random)")->check(CLI::IsMember({1u, 2u}));
    gen_cmd->add_option("--grid", gen.grid, "coordinate range [0, grid) (random)");
    gen_cmd->add_flag("--unscaled", gen.unscaled, "upper1d without the factor 3");
    gen_cmd->add_option("--out,-o", gen.output, "output file");

    AuditOptions audit;
    auto* audit_cmd = app.add_subcommand("audit-degree", "maximum degree of the 2-conflict graph");
    audit_cmd->add_option("input,--input", audit.input, "point file")->required();
    audit_cmd->add_option("--dump-edges", audit.dump_edges, "write 'u v' edge list");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "solver comparison on random instances (CSV)");
    bench_cmd->add_option("--family", bench.family, "random2d|random1d|mmp2");
    bench_cmd->add_option("--n-min", bench.n_min);
    bench_cmd->add_option("--n-max", bench.n_max);
    bench_cmd->add_option("--n-step", bench.n_step);
    bench_cmd->add_option("--trials", bench.trials);
    bench_cmd->add_option("--seed", bench.seed);
    bench_cmd->add_option("--report", bench.report, "CSV output file");
    bench_cmd->add_option("--node-budget", bench.node_budget);
    bench_cmd->add_flag("--timing", bench.timing, "add a wall_ms column");

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "SVG drawing of a point set");
    render_cmd->add_option("input,--input", render.input, "point file")->required();
    render_cmd->add_option("--set", render.set, "witness to highlight");
    render_cmd->add_option("--out,-o", render.output, "SVG file");
    render_cmd->add_flag("--circles", render.circles, "draw second-neighbor circles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    if (threads > 0) setenv("MULTIPACK_THREADS", std::to_string(threads).c_str(), 1);

    if (solve_cmd->parsed()) return cmd_solve(solve, std::cout, std::cerr);
    if (check_cmd->parsed()) return cmd_check(check, std::cout, std::cerr);
    if (gen_cmd->parsed()) return cmd_gen(gen, std::cout, std::cerr);
    if (audit_cmd->parsed()) return cmd_audit_degree(audit, std::cout, std::cerr);
    if (bench_cmd->parsed()) return cmd_bench(bench, std::cout, std::cerr);
    if (render_cmd->parsed()) return cmd_render(render, std::cout, std::cerr);
    return exit_internal;
}
