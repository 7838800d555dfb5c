// Command-line front end: generate instances, solve them with the
// approximation pipeline / exact solver / genetic baseline, audit the
// invariants, and benchmark methods against each other.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spp/spp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitSizeCap = 2;
constexpr int kExitInternal = 3;

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

struct RepResult {
    double length = 0.0;
    double seconds = 0.0;
};

struct MethodSummary {
    double length_mean = 0.0, length_std = 0.0;
    double time_mean = 0.0, time_std = 0.0;
};

// Mean and population stddev, accumulated relative to the first sample so
// that identical repetitions (the deterministic solver) report exactly zero
// spread instead of ulp-level dust.
MethodSummary summarize(const std::vector<RepResult>& reps) {
    MethodSummary s;
    const double r = static_cast<double>(reps.size());
    const double l0 = reps.front().length;
    const double t0 = reps.front().seconds;
    double lsum = 0.0, tsum = 0.0;
    for (const auto& x : reps) {
        lsum += x.length - l0;
        tsum += x.seconds - t0;
    }
    s.length_mean = l0 + lsum / r;
    s.time_mean = t0 + tsum / r;
    double lv = 0.0, tv = 0.0;
    for (const auto& x : reps) {
        lv += (x.length - s.length_mean) * (x.length - s.length_mean);
        tv += (x.seconds - s.time_mean) * (x.seconds - s.time_mean);
    }
    s.length_std = std::sqrt(lv / r);
    s.time_std = std::sqrt(tv / r);
    return s;
}

int bench_threads() {
    if (const char* env = std::getenv("SPP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(rep) for rep in [0, reps) across at most bench_threads() workers.
void parallel_reps(int reps, const std::function<void(int)>& fn) {
    const int workers = std::min(bench_threads(), reps);
    if (workers <= 1) {
        for (int r = 0; r < reps; ++r) fn(r);
        return;
    }
    std::atomic<int> counter{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int r = counter.fetch_add(1);
                if (r >= reps) return;
                fn(r);
            }
        });
    }
    for (auto& t : pool) t.join();
}

RepResult run_method(const spp::Workspace& ws, const std::string& method, int ga_pop,
                     std::uint64_t ga_seed) {
    RepResult out;
    const auto t0 = std::chrono::steady_clock::now();
    if (method == "cspp") {
        out.length = spp::solve_cspp(ws).length;
    } else if (method == "exact") {
        out.length = spp::solve_exact(ws).length;
    } else if (method == "ga") {
        out.length = spp::run_ga(ws, spp::ga_config_for(ws.size(), ga_pop, ga_seed)).first.length;
    } else {
        throw spp::validation_error("unknown method: " + method);
    }
    out.seconds = round_ms(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return out;
}

int cmd_gen(int n, double extent, double curvature_max, std::uint64_t seed,
            const std::string& out_path) {
    const spp::Workspace ws = spp::generate_random_workspace(n, extent, curvature_max, seed);
    spp::save_workspace(ws, out_path);
    return kExitOk;
}

int cmd_solve(const std::string& input, const std::string& method, std::uint64_t seed, int ga_pop,
              const std::string& stats_out) {
    const spp::Workspace ws = spp::load_workspace(input);
    if (method == "cspp") {
        const spp::CsppResult res = spp::solve_cspp_detailed(ws);
        std::cout << spp::solution_to_json(res.solution, &res.stages) << "\n";
    } else if (method == "exact") {
        std::cout << spp::solution_to_json(spp::solve_exact(ws)) << "\n";
    } else if (method == "ga") {
        auto [sol, stats] = spp::run_ga(ws, spp::ga_config_for(ws.size(), ga_pop, seed));
        std::string json = spp::solution_to_json(sol);
        if (!stats_out.empty()) {
            std::ofstream f(stats_out);
            if (!f) throw std::runtime_error("cannot write stats file: " + stats_out);
            f << stats.to_csv();
            json.insert(json.size() - 1, ",\"stats_path\":\"" + stats_out + "\"");
        }
        std::cout << json << "\n";
    } else {
        throw spp::validation_error("unknown method: " + method);
    }
    return kExitOk;
}

int cmd_verify(const std::string& input) {
    const spp::Workspace ws = spp::load_workspace(input);
    {
        const auto [g, report] = spp::repair_triangle_violations(spp::build_tsp_graph(ws));
        std::cout << "repair-report " << report.to_json() << "\n";
    }
    bool all_pass = true;
    for (const spp::CheckResult& r : spp::run_verification(ws)) {
        all_pass &= r.pass;
        std::cout << (r.pass ? "pass" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
    }
    return all_pass ? kExitOk : kExitInternal;
}

int cmd_bench(const std::vector<std::string>& env_paths, const std::vector<std::string>& methods,
              int reps, int ga_pop, std::uint64_t ga_seed_base) {
    if (env_paths.empty()) throw spp::validation_error("bench: needs at least one --envs file");
    if (methods.empty()) throw spp::validation_error("bench: needs at least one --methods entry");
    if (reps < 1) throw spp::validation_error("bench: reps must be >= 1");

    struct Row {
        std::string env, method;
        MethodSummary s;
    };
    std::vector<Row> rows;
    for (const std::string& path : env_paths) {
        const spp::Workspace ws = spp::load_workspace(path);
        for (const std::string& method : methods) {
            std::vector<RepResult> results(static_cast<std::size_t>(reps));
            parallel_reps(reps, [&](int r) {
                results[static_cast<std::size_t>(r)] =
                    run_method(ws, method, ga_pop, ga_seed_base + static_cast<std::uint64_t>(r));
            });
            rows.push_back({path, method, summarize(results)});
        }
    }

    std::cout << "env,method,length_mean,length_std,time_mean,time_std\n";
    for (const Row& r : rows) {
        std::printf("%s,%s,%s,%s,%.3f,%.3f\n", r.env.c_str(), r.method.c_str(),
                    spp::format_g9(r.s.length_mean).c_str(), spp::format_g9(r.s.length_std).c_str(),
                    r.s.time_mean, r.s.time_std);
    }

    const bool compare = std::count(methods.begin(), methods.end(), "cspp") &&
                         std::count(methods.begin(), methods.end(), "ga");
    if (compare) {
        std::cout << "\nenv,time_improving,length_improving\n";
        for (const std::string& path : env_paths) {
            const Row* cspp = nullptr;
            const Row* ga = nullptr;
            for (const Row& r : rows) {
                if (r.env != path) continue;
                if (r.method == "cspp") cspp = &r;
                if (r.method == "ga") ga = &r;
            }
            const double ti = ga->s.time_mean > 0.0
                                  ? (ga->s.time_mean - cspp->s.time_mean) / ga->s.time_mean * 100.0
                                  : 0.0;
            const double li = (ga->s.length_mean - cspp->s.length_mean) / ga->s.length_mean * 100.0;
            std::printf("%s,%s,%s\n", path.c_str(), spp::format_g9(ti).c_str(),
                        spp::format_g9(li).c_str());
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subpath planning: shortest closed tour traversing every subpath"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate a random workspace file");
    int gen_n = 0;
    double gen_extent = 100.0, gen_curvature = 1.5;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Number of subpaths")->required();
    gen->add_option("--extent", gen_extent, "Workspace side length");
    gen->add_option("--curvature-max", gen_curvature, "Max arc-length factor (>= 1)");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output workspace file")->required();

    auto* solve = app.add_subcommand("solve", "Solve a workspace, print the solution as JSON");
    std::string solve_input, solve_method = "cspp", solve_stats;
    std::uint64_t solve_seed = 0;
    int solve_ga_pop = 100;
    solve->add_option("--input", solve_input, "Workspace file")->required();
    solve->add_option("--method", solve_method, "cspp | exact | ga")
        ->check(CLI::IsMember({"cspp", "exact", "ga"}));
    solve->add_option("--seed", solve_seed, "Random seed (ga only)");
    solve->add_option("--ga-pop", solve_ga_pop, "Population size (ga only)");
    solve->add_option("--stats-out", solve_stats, "Write per-generation stats CSV (ga only)");

    auto* verify = app.add_subcommand("verify", "Run the invariant battery on a workspace");
    std::string verify_input;
    verify->add_option("--input", verify_input, "Workspace file")->required();

    auto* bench = app.add_subcommand("bench", "Benchmark methods over workspace files (CSV)");
    std::vector<std::string> bench_envs, bench_methods{"cspp", "ga"};
    int bench_reps = 30, bench_ga_pop = 100;
    std::uint64_t bench_seed_base = 0;
    bench->add_option("--envs", bench_envs, "Workspace files")->required()->expected(-1);
    bench->add_option("--methods", bench_methods, "Any of: cspp exact ga")->expected(-1);
    bench->add_option("--reps", bench_reps, "Repetitions per env and method");
    bench->add_option("--ga-pop", bench_ga_pop, "GA population size");
    bench->add_option("--ga-seed-base", bench_seed_base, "Seed for GA rep 0; rep r uses base+r");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_n, gen_extent, gen_curvature, gen_seed, gen_out);
        if (solve->parsed())
            return cmd_solve(solve_input, solve_method, solve_seed, solve_ga_pop, solve_stats);
        if (verify->parsed()) return cmd_verify(verify_input);
        if (bench->parsed())
            return cmd_bench(bench_envs, bench_methods, bench_reps, bench_ga_pop, bench_seed_base);
    } catch (const spp::size_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeCap;
    } catch (const spp::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
