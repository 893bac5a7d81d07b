#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipls/examples.hpp"
#include "ipls/model.hpp"
#include "ipls/oracle.hpp"
#include "ipls/precond.hpp"
#include "ipls/solve.hpp"

using nlohmann::json;
using namespace ipls;

namespace {

struct RunConfig {
    std::string input;
    std::string example;
    std::string method = "pki";
    std::vector<std::string> strategies;  // empty -> command default
    std::vector<std::string> methods;     // compare only
    std::string order = "auto";
    std::string rounding = "rigorous";
    std::string format = "table";
    std::string export_path;
    double tol = 1e-10;
    int max_iter = 200;
    std::uint64_t seed = 1;
    bool inner = false;
    bool oracle = false;
    std::optional<double> delta;
    int candidates = 1000;
    // experiment
    std::string family;
    int n = 10;
    int K = 7;
    int reps = 100;
    std::string variant = "ab";
};

std::string g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string iv_str(const Interval& x) { return "[" + g6(x.lo()) + ", " + g6(x.hi()) + "]"; }

void check_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (cfg.format == a) return;
    throw UsageError("unsupported --format for this command: " + cfg.format);
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Order parse_order(const std::string& s) {
    if (s == "factor_first") return Order::FactorFirst;
    if (s == "relax_first") return Order::RelaxFirst;
    if (s == "auto") return Order::Auto;
    throw UsageError("unknown order: " + s);
}

Method parse_method(const std::string& s) {
    if (s == "pki") return Method::PKI;
    if (s == "phbr") return Method::PHBR;
    throw UsageError("unknown method: " + s);
}

void apply_rounding(const RunConfig& cfg) {
    if (cfg.rounding == "fast")
        rounding::set_mode(rounding::Mode::Fast);
    else if (cfg.rounding == "rigorous")
        rounding::set_mode(rounding::Mode::Rigorous);
    else
        throw UsageError("unknown rounding mode: " + cfg.rounding);
}

ParametricSystem load_system(const RunConfig& cfg) {
    if (!cfg.example.empty() && !cfg.input.empty())
        throw UsageError("--example and --input are mutually exclusive");
    if (!cfg.example.empty()) return build_example(cfg.example, cfg.delta).system;
    if (!cfg.input.empty()) return load_problem(cfg.input);
    throw UsageError("one of --example or --input is required");
}

void write_export(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

json interval_json(const Interval& x) { return json::array({x.lo(), x.hi()}); }

json result_json(const SolveResult& r) {
    json j;
    j["schema"] = "ipls-result/1";
    j["method"] = method_name(r.method);
    j["strategy"] = strategy_name(r.strategy);
    j["rho"] = r.rho;
    j["iterations"] = r.iterations;
    j["max_iter_reached"] = r.max_iter_reached;
    j["outer"] = json::array();
    for (const auto& x : r.outer) j["outer"].push_back(interval_json(x));
    j["inner"] = json::array();
    for (const auto& x : r.inner) j["inner"].push_back(x ? interval_json(*x) : json());
    j["F"] = json::array();
    for (int i = 0; i < r.psolution.F.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < r.psolution.F.cols(); ++k) row.push_back(r.psolution.F(i, k));
        j["F"].push_back(row);
    }
    j["a"] = json::array();
    for (const auto& x : r.psolution.a) j["a"].push_back(interval_json(x));
    return j;
}

SampledHull oracle_hull(const ParametricSystem& ps, std::uint64_t seed, long count = 10000) {
    SampledHull v = sample_hull(ps, Sampler::Vertices, count, seed);
    SampledHull r = sample_hull(ps, Sampler::Random, count, seed);
    SampledHull merged = r;
    merged.box = hull(std::vector<IntervalVector>{v.box, r.box});
    merged.samples_used += v.samples_used;
    merged.samples_skipped += v.samples_skipped;
    return merged;
}

// Raw width-ratio measure; negative when x is wider than y.
double o_omega(const Interval& x, const Interval& y) {
    if (y.width() <= 0.0) return 0.0;
    return (1.0 - x.width() / y.width()) * 100.0;
}

SolveResult run_one(const IntervalAffineSystem& sys, Method m, Strategy s, const RunConfig& cfg) {
    BuildOptions bopts;
    bopts.seed = cfg.seed;
    bopts.candidates = cfg.candidates;
    Preconditioner pc = build(s, sys, bopts);
    if (m == Method::PHBR) return phbr(sys, pc, parse_order(cfg.order));
    PkiOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.order = parse_order(cfg.order);
    return pki(sys, pc, opts);
}

int cmd_solve(const RunConfig& cfg) {
    apply_rounding(cfg);
    check_format(cfg, {"table", "json", "csv"});
    ParametricSystem ps = load_system(cfg);
    IntervalAffineSystem sys = affine_transform(ps);
    if (cfg.strategies.size() > 1) throw UsageError("solve takes a single --precond");
    Strategy strat = parse_strategy(cfg.strategies.empty() ? "lu" : cfg.strategies.front());
    SolveResult r = run_one(sys, parse_method(cfg.method), strat, cfg);

    json j = result_json(r);
    std::optional<SampledHull> hull_box;
    if (cfg.oracle) {
        hull_box = oracle_hull(ps, cfg.seed);
        j["sampled_hull"] = json::array();
        for (const auto& x : hull_box->box) j["sampled_hull"].push_back(interval_json(x));
    }

    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "component,outer_lo,outer_hi";
        if (cfg.inner) std::cout << ",inner_lo,inner_hi";
        if (hull_box) std::cout << ",hull_lo,hull_hi";
        std::cout << "\n";
        for (std::size_t i = 0; i < r.outer.size(); ++i) {
            std::cout << "x" << i + 1 << "," << full(r.outer[i].lo()) << ","
                      << full(r.outer[i].hi());
            if (cfg.inner) {
                if (r.inner[i])
                    std::cout << "," << full(r.inner[i]->lo()) << "," << full(r.inner[i]->hi());
                else
                    std::cout << ",,";
            }
            if (hull_box)
                std::cout << "," << full(hull_box->box[i].lo()) << ","
                          << full(hull_box->box[i].hi());
            std::cout << "\n";
        }
    } else {
        std::cout << "method " << method_name(r.method) << "  strategy " << strategy_name(r.strategy)
                  << "  rho " << g6(r.rho) << "  iterations " << r.iterations << "\n";
        if (r.max_iter_reached) std::cout << "warning: iteration limit reached before convergence\n";
        for (std::size_t i = 0; i < r.outer.size(); ++i) {
            std::cout << "x" << i + 1 << "  outer " << iv_str(r.outer[i]);
            if (cfg.inner) {
                std::cout << "  inner ";
                std::cout << (r.inner[i] ? iv_str(*r.inner[i]) : std::string("(empty)"));
            }
            if (hull_box) {
                std::cout << "  hull " << iv_str(hull_box->box[i]) << "  O_w "
                          << g6(o_omega(hull_box->box[i], r.outer[i])) << "%";
            }
            std::cout << "\n";
        }
    }
    write_export(cfg.export_path, j.dump(2) + "\n");
    return 0;
}

int cmd_regularity(const RunConfig& cfg) {
    apply_rounding(cfg);
    check_format(cfg, {"table", "json", "csv"});
    ParametricSystem ps = load_system(cfg);
    IntervalAffineSystem sys = affine_transform(ps);
    std::vector<std::string> strategies = cfg.strategies;
    if (strategies.empty()) strategies = {"left", "right", "lu", "svd", "qr"};

    struct Row {
        std::string name;
        double rho;
        bool regular;
        std::string error;
    };
    std::vector<Row> rows;
    BuildOptions bopts;
    bopts.seed = cfg.seed;
    bopts.candidates = cfg.candidates;
    for (const auto& name : strategies) {
        try {
            Preconditioner pc = build(parse_strategy(name), sys, bopts);
            RegularityReport rep = strong_regularity(pc, sys);
            rows.push_back({name, rep.rho, rep.strongly_regular, ""});
        } catch (const UsageError&) {
            throw;
        } catch (const Error& e) {
            rows.push_back({name, std::numeric_limits<double>::quiet_NaN(), false, e.what()});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (std::isnan(a.rho)) return false;
        if (std::isnan(b.rho)) return true;
        return a.rho < b.rho;
    });

    json j;
    j["schema"] = "ipls-regularity/1";
    j["rows"] = json::array();
    for (const auto& row : rows) {
        json rj;
        rj["strategy"] = row.name;
        if (std::isnan(row.rho))
            rj["error"] = row.error;
        else
            rj["rho"] = row.rho;
        rj["strongly_regular"] = row.regular;
        j["rows"].push_back(rj);
    }
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "strategy,rho,strongly_regular\n";
        for (const auto& row : rows)
            std::cout << row.name << "," << (std::isnan(row.rho) ? "" : full(row.rho)) << ","
                      << (row.regular ? "yes" : "no") << "\n";
    } else {
        std::printf("%-8s %-12s %s\n", "strategy", "rho", "strongly_regular");
        for (const auto& row : rows) {
            if (std::isnan(row.rho))
                std::printf("%-8s %-12s (%s)\n", row.name.c_str(), "-", row.error.c_str());
            else
                std::printf("%-8s %-12s %s\n", row.name.c_str(), g6(row.rho).c_str(),
                            row.regular ? "yes" : "no");
        }
    }
    write_export(cfg.export_path, j.dump(2) + "\n");
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    apply_rounding(cfg);
    check_format(cfg, {"table", "json", "csv"});
    ParametricSystem ps = load_system(cfg);
    IntervalAffineSystem sys = affine_transform(ps);

    std::vector<std::string> methods = cfg.methods;
    if (methods.empty()) methods = {cfg.method};
    std::vector<std::string> strategies = cfg.strategies;
    if (strategies.empty()) strategies = {"left", "lu"};

    struct Row {
        std::string label;
        std::optional<SolveResult> result;
        std::string error;
    };
    std::vector<Row> rows;
    for (const auto& m : methods)
        for (const auto& s : strategies) {
            Row row;
            row.label = m + "_" + s;
            try {
                row.result = run_one(sys, parse_method(m), parse_strategy(s), cfg);
            } catch (const UsageError&) {
                throw;
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    if (rows.size() < 2) throw UsageError("compare requires at least two method/strategy rows");

    const std::size_t n = static_cast<std::size_t>(sys.n());
    int ok = 0;
    for (const auto& row : rows)
        if (row.result) ++ok;
    if (ok == 0) {
        for (const auto& row : rows)
            std::cerr << row.label << ": " << row.error << "\n";
        return 2;
    }

    // Componentwise-tightest interval across the successful rows.
    IntervalVector tightest;
    for (std::size_t i = 0; i < n; ++i) {
        const Interval* best = nullptr;
        for (const auto& row : rows)
            if (row.result &&
                (!best || row.result->outer[i].width() < best->width()))
                best = &row.result->outer[i];
        tightest.push_back(*best);
    }
    std::optional<SampledHull> hull_box;
    if (cfg.oracle) hull_box = oracle_hull(ps, cfg.seed);

    json j;
    j["schema"] = "ipls-compare/1";
    j["reference"] = "componentwise_tightest";
    j["rows"] = json::array();
    for (const auto& row : rows) {
        json rj;
        rj["label"] = row.label;
        if (!row.result) {
            rj["error"] = row.error;
        } else {
            rj["outer"] = json::array();
            rj["o_omega"] = json::array();
            for (std::size_t i = 0; i < n; ++i) {
                rj["outer"].push_back(interval_json(row.result->outer[i]));
                rj["o_omega"].push_back(o_omega(tightest[i], row.result->outer[i]));
            }
            if (hull_box) {
                rj["o_omega_vs_hull"] = json::array();
                for (std::size_t i = 0; i < n; ++i)
                    rj["o_omega_vs_hull"].push_back(o_omega(hull_box->box[i], row.result->outer[i]));
            }
            rj["iterations"] = row.result->iterations;
            rj["rho"] = row.result->rho;
        }
        j["rows"].push_back(rj);
    }

    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "label";
        for (std::size_t i = 0; i < n; ++i) std::cout << ",x" << i + 1;
        std::cout << "\n";
        for (const auto& row : rows) {
            std::cout << row.label;
            for (std::size_t i = 0; i < n; ++i)
                std::cout << ","
                          << (row.result ? g6(o_omega(tightest[i], row.result->outer[i])) : "");
            std::cout << "\n";
        }
    } else {
        std::cout << "O_w overestimation (%) against the componentwise-tightest row\n";
        std::printf("%-12s", "row");
        for (std::size_t i = 0; i < n; ++i) std::printf(" %10s", ("x" + std::to_string(i + 1)).c_str());
        std::printf("  %10s %6s\n", "rho", "iters");
        for (const auto& row : rows) {
            std::printf("%-12s", row.label.c_str());
            if (!row.result) {
                std::printf("  failed: %s\n", row.error.c_str());
                continue;
            }
            for (std::size_t i = 0; i < n; ++i)
                std::printf(" %10s", g6(o_omega(tightest[i], row.result->outer[i])).c_str());
            std::printf("  %10s %6d\n", g6(row.result->rho).c_str(), row.result->iterations);
        }
        if (hull_box) {
            std::printf("O_w overestimation (%%) against the sampled hull\n");
            for (const auto& row : rows) {
                if (!row.result) continue;
                std::printf("%-12s", row.label.c_str());
                for (std::size_t i = 0; i < n; ++i)
                    std::printf(" %10s", g6(o_omega(hull_box->box[i], row.result->outer[i])).c_str());
                std::printf("\n");
            }
        }
    }
    write_export(cfg.export_path, j.dump(2) + "\n");
    return 0;
}

int cmd_experiment(const RunConfig& cfg) {
    apply_rounding(cfg);
    // csv is the default here; "table" is the unset sentinel from RunConfig
    std::string format = cfg.format == "table" ? "csv" : cfg.format;
    if (format != "csv" && format != "json")
        throw UsageError("unsupported --format for this command: " + cfg.format);
    if (cfg.reps < 1) throw UsageError("--reps must be positive");
    if (cfg.n < 2) throw UsageError("--n must be at least 2");
    if (cfg.K < 1) throw UsageError("--K must be at least 1");

    EnsembleSpec spec;
    spec.n = cfg.n;
    spec.K = cfg.K;
    spec.seed = cfg.seed;
    if (cfg.variant == "aa")
        spec.variant = EnsembleSpec::Variant::AA;
    else if (cfg.variant != "ab")
        throw UsageError("unknown variant: " + cfg.variant);

    std::vector<std::string> strategies;
    if (cfg.family == "rank1") {
        strategies = {"s0", "s1", "s2", "s3"};
    } else if (cfg.family == "nonidmid") {
        spec.midpoint = EnsembleSpec::Midpoint::RandomPM8;
        spec.u = Interval(-1.0, 2.0);
        spec.v = Interval(2.0, 3.0);
        spec.spread = 0.2;
        strategies = {"lu", "lu+s0", "svd", "svd+s0", "qr", "qr+s0"};
    } else {
        throw UsageError("unknown family: " + cfg.family + " (expected rank1 or nonidmid)");
    }
    if (!cfg.strategies.empty()) strategies = cfg.strategies;

    RatioTable table = ratio_statistics(spec, cfg.reps, strategies);

    std::ostringstream csv;
    csv << "n,K,rank,variant,strategy,geo_mean,reps,seed\n";
    for (const auto& row : table.rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", row.geo_mean);
        csv << spec.n << "," << spec.K << "," << spec.rank << "," << cfg.variant << ","
            << row.strategy << "," << buf << "," << row.used << "," << cfg.seed << "\n";
    }
    if (format == "json") {
        json j;
        j["schema"] = "ipls-experiment/1";
        j["n"] = spec.n;
        j["K"] = spec.K;
        j["rank"] = spec.rank;
        j["variant"] = cfg.variant;
        j["reps"] = table.reps;
        j["seed"] = cfg.seed;
        j["rows"] = json::array();
        for (const auto& row : table.rows) {
            json rj;
            rj["strategy"] = row.strategy;
            rj["geo_mean"] = row.geo_mean;
            rj["used"] = row.used;
            j["rows"].push_back(rj);
        }
        std::cout << j.dump(2) << "\n";
        write_export(cfg.export_path, j.dump(2) + "\n");
    } else {
        std::cout << csv.str();
        write_export(cfg.export_path, csv.str());
    }
    return 0;
}

int cmd_paper_example(const RunConfig& cfg) {
    apply_rounding(cfg);
    check_format(cfg, {"table", "json"});
    if (cfg.example.empty()) {
        std::printf("%-12s %3s %3s %8s  %s\n", "id", "n", "K", "delta", "description");
        for (const auto& id : example_ids()) {
            PaperExample e = build_example(id, cfg.delta);
            std::printf("%-12s %3d %3d %8s  %s\n", e.id.c_str(), e.system.n, e.system.K,
                        e.delta > 0.0 ? g6(e.delta).c_str() : "-", e.description.c_str());
        }
        return 0;
    }
    PaperExample e = build_example(cfg.example, cfg.delta);
    std::string problem = export_problem(e.system);
    if (cfg.format == "json") {
        std::cout << problem << "\n";
    } else {
        std::cout << e.id << ": " << e.description << "\n";
        std::cout << "n " << e.system.n << "  parameters " << e.system.K;
        if (e.delta > 0.0) std::cout << "  delta " << g6(e.delta);
        std::cout << "\n";
        for (int k = 0; k < e.system.K; ++k)
            std::cout << "  " << e.system.names[static_cast<std::size_t>(k)] << " in "
                      << iv_str(e.system.p[static_cast<std::size_t>(k)]) << "\n";
    }
    write_export(cfg.export_path, problem + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"enclosures for interval parametric linear systems"};
    app.require_subcommand(1);

    auto add_shared = [&](CLI::App* cmd, bool with_input) {
        if (with_input) {
            cmd->add_option("--example", cfg.example, "registry example id");
            cmd->add_option("--input", cfg.input, "problem JSON path");
            cmd->add_option("--delta", [&cfg](const std::vector<std::string>& vals) {
                try {
                    cfg.delta = std::stod(vals.front());
                } catch (...) {
                    return false;
                }
                return true;
            }, "uncertainty scale for the registry examples");
        }
        cmd->add_option("--order", cfg.order, "factor_first | relax_first | auto");
        cmd->add_option("--tol", cfg.tol, "iteration stopping tolerance");
        cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
        cmd->add_option("--rounding", cfg.rounding, "fast | rigorous");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--format", cfg.format, "table | json | csv");
        cmd->add_option("--export", cfg.export_path, "write machine-readable output to file");
        cmd->add_option("--candidates", cfg.candidates, "sample count for s2/s3 construction");
    };

    CLI::App* solve = app.add_subcommand("solve", "enclose the solution set");
    add_shared(solve, true);
    solve->add_option("--method", cfg.method, "pki | phbr");
    solve->add_option("--precond", cfg.strategies, "preconditioning strategy");
    solve->add_flag("--inner", cfg.inner, "print inner estimation");
    solve->add_flag("--oracle", cfg.oracle, "print the sampled solution hull");

    CLI::App* reg = app.add_subcommand("regularity", "strong regularity report per strategy");
    add_shared(reg, true);
    reg->add_option("--precond", cfg.strategies, "strategies to test");

    CLI::App* cmp = app.add_subcommand("compare", "overestimation matrix across strategies");
    add_shared(cmp, true);
    cmp->add_option("--method", cfg.methods, "methods to include (repeatable)");
    cmp->add_option("--precond", cfg.strategies, "strategies to include (repeatable)");
    cmp->add_flag("--oracle", cfg.oracle, "also compare against the sampled hull");

    CLI::App* exp = app.add_subcommand("experiment", "ensemble ratio statistics (CSV)");
    add_shared(exp, false);
    exp->add_option("--family", cfg.family, "rank1 | nonidmid")->required();
    exp->add_option("--n", cfg.n, "system size");
    exp->add_option("--K", cfg.K, "parameter count");
    exp->add_option("--reps", cfg.reps, "ensemble repetitions");
    exp->add_option("--variant", cfg.variant, "ab | aa");
    exp->add_option("--strategies", cfg.strategies, "override the strategy list");

    CLI::App* pex = app.add_subcommand("paper-example", "show or export a registry example");
    add_shared(pex, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (reg->parsed()) return cmd_regularity(cfg);
        if (cmp->parsed()) return cmd_compare(cfg);
        if (exp->parsed()) return cmd_experiment(cfg);
        if (pex->parsed()) return cmd_paper_example(cfg);
        throw UsageError("no command given");
    } catch (const NotStronglyRegular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
