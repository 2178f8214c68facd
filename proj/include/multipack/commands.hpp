#pragma once

// Command implementations behind the `multipack` CLI. Each command writes
// machine-readable output to `out`, human summaries and error JSON to `err`,
// and returns the process exit code.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/graph.hpp"
#include "multipack/instances.hpp"
#include "multipack/io.hpp"
#include "multipack/line_solver.hpp"
#include "multipack/multipacking.hpp"
#include "multipack/plane_solver.hpp"
#include "multipack/svg.hpp"

namespace multipack::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid = 1, ///< check failed, audit exceeded, bench property broken
    exit_parse = 2,
    exit_incompatible = 3,
    exit_budget = 4,
    exit_internal = 5,
};

/// Method/radius/dimension combination the solver cannot honor.
class IncompatibleMethod : public Error {
public:
    using Error::Error;
};

struct SolveOptions {
    std::filesystem::path input;
    std::string radius = "full";
    std::string method = "auto";
    std::optional<std::size_t> k;
    std::optional<std::filesystem::path> output;
    std::uint64_t node_budget = default_node_budget;
    std::size_t brute_limit = default_bruteforce_limit;
    bool timing = false;
};

struct CheckOptions {
    std::filesystem::path input;
    std::filesystem::path set;
    std::optional<std::string> radius;
};

struct GenOptions {
    std::string family;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    unsigned dim = 2;
    std::optional<std::uint64_t> grid;
    bool unscaled = false;
    std::optional<std::filesystem::path> output;
};

struct AuditOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> dump_edges;
};

struct BenchOptions {
    std::string family = "random2d";
    std::size_t n_min = 10;
    std::size_t n_max = 60;
    std::size_t n_step = 10;
    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> report;
    std::uint64_t node_budget = default_node_budget;
    bool timing = false;
};

struct RenderOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> set;
    std::optional<std::filesystem::path> output;
    bool circles = false;
};

namespace detail {

inline void write_error(std::ostream& err, const char* kind, const std::string& message) {
    io::Json j;
    j["error"] = kind;
    j["message"] = message;
    err << j.dump() << '\n';
}

/// Runs a command body and maps library errors onto exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        write_error(err, "parse", e.what());
        return exit_parse;
    } catch (const GeneralPositionError& e) {
        write_error(err, "general_position", e.what());
        return exit_parse;
    } catch (const IncompatibleMethod& e) {
        write_error(err, "incompatible", e.what());
        return exit_incompatible;
    } catch (const RangeError& e) {
        write_error(err, "range", e.what());
        return exit_incompatible;
    } catch (const DimensionMismatch& e) {
        write_error(err, "dimension", e.what());
        return exit_incompatible;
    } catch (const BudgetExceeded& e) {
        write_error(err, "budget", e.what());
        return exit_budget;
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
        return exit_internal;
    }
}

inline std::size_t parse_radius(const std::string& text, std::size_t n) {
    if (text == "full") return resolve_radius(full_radius, n);
    std::size_t r = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError("--r must be a positive integer or 'full'");
    return resolve_radius(r, n);
}

inline void emit(const std::optional<std::filesystem::path>& path, std::ostream& out, const std::string& text) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + path->string() + "'");
    f << text;
}

inline std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", ratio);
    return buf;
}

} // namespace detail

/// `solve`: dispatch to the solver matching dimension, radius and method.
/// auto picks greedy1d on the line, nng for r = 1, exact for r = 2 and the
/// brute-force oracle otherwise.
inline int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const PointSet points = io::load_points(opt.input);
        const std::size_t n = points.size();
        if (n == 0) throw ParseError("input has no points");
        std::string method = opt.method;
        SolveReport report;
        if (n == 1) {
            report = bruteforce_max_r_multipacking(points, full_radius, opt.brute_limit);
            if (method != "auto") report.method = method;
        } else {
            const std::size_t r = detail::parse_radius(opt.radius, n);
            if (method == "auto") method = points.dim() == 1 ? "greedy1d" : r == 1 ? "nng" : r == 2 ? "exact" : "brute";
            auto require_r = [&](std::size_t want) {
                if (r != want) throw IncompatibleMethod("method '" + method + "' requires --r " + std::to_string(want));
            };
            if (method == "greedy1d") {
                if (points.dim() != 1) throw IncompatibleMethod("method 'greedy1d' requires 1D input");
                report = greedy_max_r_multipacking_1d(points, r);
            } else if (method == "nng") {
                require_r(1);
                report = max_1_multipacking(points);
            } else if (method == "exact") {
                require_r(2);
                report = max_2_multipacking_exact(points, opt.node_budget);
            } else if (method == "fpt") {
                require_r(2);
                if (!opt.k) throw IncompatibleMethod("method 'fpt' requires --k");
                report = fpt_2_multipacking(points, *opt.k);
            } else if (method == "greedy") {
                require_r(2);
                report = greedy_2_multipacking(points);
            } else if (method == "brute") {
                report = bruteforce_max_r_multipacking(points, r, opt.brute_limit);
            } else {
                throw IncompatibleMethod("unknown method '" + method + "'");
            }
        }
        detail::emit(opt.output, out, io::report_json(report, opt.timing).dump() + "\n");
        err << "solve: method=" << report.method << " r=" << report.r() << " size=" << report.size() << '\n';
        return static_cast<int>(exit_ok);
    });
}

/// `check`: exit 0 iff the set is a valid r-multipacking, else print the
/// first violation and exit 1.
inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const PointSet points = io::load_points(opt.input);
        const Multipacking set = io::parse_witness_json(io::read_file(opt.set));
        const std::size_t n = points.size();
        std::size_t r = 0;
        if (opt.radius) r = detail::parse_radius(*opt.radius, n);
        else if (set.r() > 0) r = resolve_radius(set.r(), n);
        else throw IncompatibleMethod("no radius: pass --r or include \"r\" in the set file");

        CheckResult result = 2 * (r + 1) >= n ? is_r_multipacking(points, build_neighbor_table(points), set.indices(), r)
                                               : is_r_multipacking(nearest_neighbors(points, r), set.indices(), r);
        if (result) {
            io::Json j;
            j["valid"] = true;
            j["r"] = r;
            j["size"] = set.size();
            out << j.dump() << '\n';
            return static_cast<int>(exit_ok);
        }
        io::Json j = io::violation_json(*result.violation);
        j["r"] = r;
        out << j.dump() << '\n';
        err << "check: violation at v=" << result.violation->v << " s=" << result.violation->s << '\n';
        return static_cast<int>(exit_invalid);
    });
}

/// `gen`: emit a named or random instance as CSV.
inline int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        PointSet points;
        if (opt.family == "lower1d") {
            points = lower_tight_example(opt.n);
        } else if (opt.family == "upper1d") {
            points = upper_tight_example(opt.n, opt.unscaled ? Scaling::unscaled : Scaling::times_three);
        } else if (opt.family == "pentagon") {
            points = pentagon_five();
        } else if (opt.family == "square4") {
            points = square_four();
        } else if (opt.family == "random") {
            const std::uint64_t grid = opt.grid.value_or(std::max<std::uint64_t>(std::uint64_t{opt.n} * opt.n, 1'000'000));
            points = random_point_set(opt.n, opt.dim, opt.seed, grid);
        } else {
            throw IncompatibleMethod("unknown family '" + opt.family + "'");
        }
        detail::emit(opt.output, out, io::format_points_csv(points));
        err << "gen: family=" << opt.family << " n=" << points.size() << '\n';
        return static_cast<int>(exit_ok);
    });
}

/// `audit-degree`: maximum degree of G_P; exit 1 if it exceeds 17.
inline int cmd_audit_degree(const AuditOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const PointSet points = io::load_points(opt.input);
        const ConflictGraph graph = build_gp(nearest_neighbors(points, 2));
        const DegreeAudit audit = max_degree_audit(graph);
        if (opt.dump_edges) detail::emit(opt.dump_edges, out, graph.edge_list());
        io::Json j;
        j["max_degree"] = audit.max_degree;
        j["argmax"] = audit.argmax;
        j["within_bound"] = audit.within_bound;
        j["bound"] = gp_degree_bound;
        out << j.dump() << '\n';
        return static_cast<int>(audit.within_bound ? exit_ok : exit_invalid);
    });
}

/// `bench`: CSV table of solver sizes against exact optima.
///   random2d  exact vs greedy for 2-multipacking (ratio = optimum / size)
///   random1d  greedy1d vs brute force for every radius
///   mmp2      multipacking number of random 6-point sets
/// Exits 1 when the tracked property (ratio <= 4, greedy == oracle, MP >= 2)
/// fails on any row.
inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (opt.trials == 0) throw RangeError("--trials must be positive");
        if (opt.n_step == 0 || opt.n_min > opt.n_max) throw RangeError("bad n range");
        std::string csv = opt.timing ? "instance,n,method,size,optimum,ratio,nodes,wall_ms\n" : "instance,n,method,size,optimum,ratio,nodes\n";
        auto row = [&](const std::string& id, std::size_t n, const SolveReport& rep, std::optional<std::size_t> optimum) {
            csv += id + ',' + std::to_string(n) + ',' + rep.method + ',' + std::to_string(rep.size()) + ',';
            if (optimum) csv += std::to_string(*optimum);
            csv += ',';
            if (optimum && rep.size() > 0) csv += detail::format_ratio(static_cast<double>(*optimum) / static_cast<double>(rep.size()));
            csv += ',' + std::to_string(rep.stats.nodes);
            if (opt.timing) csv += ',' + detail::format_ratio(std::chrono::duration<double, std::milli>(rep.stats.elapsed).count());
            csv += '\n';
        };
        const SplitMix64 root(opt.seed);
        bool ok = true;
        std::uint64_t counter = 0;

        if (opt.family == "random2d") {
            double worst = 1.0;
            std::size_t skipped = 0;
            for (std::size_t n = std::max<std::size_t>(opt.n_min, 3); n <= opt.n_max; n += opt.n_step)
                for (std::size_t t = 0; t < opt.trials; ++t) {
                    const auto points = random_point_set(n, 2, root.fork(counter++).next(), std::max<std::uint64_t>(std::uint64_t{n} * n, 1'000'000));
                    const std::string id = "random2d-n" + std::to_string(n) + "-t" + std::to_string(t);
                    std::optional<std::size_t> optimum;
                    try {
                        auto exact = max_2_multipacking_exact(points, opt.node_budget);
                        optimum = exact.size();
                        row(id, n, exact, optimum);
                    } catch (const BudgetExceeded&) {
                        ++skipped;
                    }
                    auto greedy = greedy_2_multipacking(points);
                    row(id, n, greedy, optimum);
                    if (optimum) {
                        const double ratio = static_cast<double>(*optimum) / static_cast<double>(greedy.size());
                        worst = std::max(worst, ratio);
                        if (4 * greedy.size() < *optimum) ok = false;
                    }
                }
            err << "bench random2d: worst ratio " << detail::format_ratio(worst) << ", exact budget exceeded on " << skipped << " instance(s)\n";
        } else if (opt.family == "random1d") {
            std::size_t mismatches = 0;
            for (std::size_t n = std::max<std::size_t>(opt.n_min, 2); n <= opt.n_max; n += opt.n_step)
                for (std::size_t t = 0; t < opt.trials; ++t) {
                    const auto points = random_point_set(n, 1, root.fork(counter++).next(), std::max<std::uint64_t>(std::uint64_t{n} * n, 1'000'000));
                    for (std::size_t r = 1; r < n; ++r) {
                        const std::string id = "random1d-n" + std::to_string(n) + "-t" + std::to_string(t) + "-r" + std::to_string(r);
                        std::optional<std::size_t> optimum;
                        if (n <= default_bruteforce_limit) {
                            auto brute = bruteforce_max_r_multipacking(points, r);
                            optimum = brute.size();
                            row(id, n, brute, optimum);
                        }
                        auto greedy = greedy_max_r_multipacking_1d(points, r);
                        row(id, n, greedy, optimum);
                        if (optimum && *optimum != greedy.size()) ++mismatches;
                    }
                }
            if (mismatches > 0) ok = false;
            err << "bench random1d: " << mismatches << " greedy/oracle mismatch(es)\n";
        } else if (opt.family == "mmp2") {
            const auto scan = mmp2_scan(opt.trials, opt.seed);
            for (std::size_t t = 0; t < scan.mp_values.size(); ++t) {
                SolveReport rep;
                rep.method = "brute";
                std::vector<Index> idx(scan.mp_values[t]);
                for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                rep.packing = Multipacking(std::move(idx), 5);
                row("mmp2-t" + std::to_string(t), 6, rep, scan.mp_values[t]);
            }
            if (!scan.counterexamples.empty()) ok = false;
            err << "bench mmp2: " << scan.checked << " sets, min MP " << scan.min_mp << ", " << scan.counterexamples.size() << " counterexample(s)\n";
        } else {
            throw IncompatibleMethod("unknown bench family '" + opt.family + "'");
        }
        detail::emit(opt.report, out, csv);
        return static_cast<int>(ok ? exit_ok : exit_invalid);
    });
}

/// `render`: SVG of the points, an optional witness and optional N_2 circles.
inline int cmd_render(const RenderOptions& opt, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const PointSet points = io::load_points(opt.input);
        std::vector<Index> witness;
        if (opt.set) witness = io::parse_witness_json(io::read_file(*opt.set)).indices();
        for (Index w : witness)
            if (w >= points.size()) throw RangeError("witness index " + std::to_string(w) + " out of range");
        SvgOptions svg;
        svg.second_neighbor_circles = opt.circles;
        detail::emit(opt.output, out, render_svg(points, witness, svg));
        return static_cast<int>(exit_ok);
    });
}

} // namespace multipack::cli
