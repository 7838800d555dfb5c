#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "spp/errors.hpp"
#include "spp/rng.hpp"
#include "spp/solution.hpp"
#include "spp/workspace.hpp"

namespace spp {

// Permutation-with-direction-bits encoding: order[k] is the k-th subpath
// visited and connect_tail[k] says which of its ends is joined to the next
// subpath (0 joins the head/start, 1 joins the tail/end). Joining the tail
// means the subpath is walked start-to-end, i.e. forward.
struct AugmentedChromosome {
    std::vector<int> order;
    std::vector<std::uint8_t> connect_tail;
};

struct GaConfig {
    int population_size = 100;
    double crossover_rate = 0.5;
    double inversion_rate = 0.25;
    double rotation_rate = 0.25;
    double mutation_rate = 0.5;
    double reversal_rate = 0.5;
    int max_generations = 300;
    int stagnation_window = 50;
    std::uint64_t seed = 0;
};

// Generation caps that match how long the search keeps improving at each
// scale; beyond ~50 stagnant generations it has effectively converged.
inline GaConfig ga_config_for(int n, int population_size, std::uint64_t seed) {
    GaConfig cfg;
    cfg.population_size = population_size;
    cfg.max_generations = n <= 20 ? 150 : n <= 50 ? 300 : 500;
    cfg.seed = seed;
    return cfg;
}

inline SubpathOrder chromosome_to_order(const AugmentedChromosome& c) {
    SubpathOrder order;
    order.reserve(c.order.size());
    for (std::size_t k = 0; k < c.order.size(); ++k) {
        order.emplace_back(c.order[k],
                           c.connect_tail[k] ? Orientation::forward : Orientation::reverse);
    }
    return order;
}

// Tour length of the decoded chromosome, in workspace units (lower is
// better). Wraps from the last subpath back to the first.
inline double ga_fitness(const AugmentedChromosome& c, const Workspace& ws) {
    return workspace_tour_length(ws, chromosome_to_order(c));
}

struct GaGenerationStats {
    double best = 0.0;
    double mean = 0.0;
};

struct GaStats {
    std::vector<GaGenerationStats> generations;
    int generations_run = 0;
    double wall_time_s = 0.0;

    std::string to_csv() const {
        std::string out = "generation,best,mean\n";
        for (std::size_t g = 0; g < generations.size(); ++g) {
            out += std::to_string(g) + ',' + format_g9(generations[g].best) + ',' +
                   format_g9(generations[g].mean) + '\n';
        }
        return out;
    }
};

namespace detail {

inline AugmentedChromosome random_chromosome(int n, Rng& rng) {
    AugmentedChromosome c;
    c.order.resize(static_cast<std::size_t>(n));
    std::iota(c.order.begin(), c.order.end(), 0);
    rng.shuffle(c.order);
    c.connect_tail.resize(static_cast<std::size_t>(n));
    for (auto& b : c.connect_tail) b = rng.coin() ? 1 : 0;
    return c;
}

// Order crossover: a random slice of the first parent is kept in place, the
// remaining genes fill in cyclically in the second parent's order. Direction
// bits travel with their genes, so the child is always a valid permutation
// with one bit per gene.
inline AugmentedChromosome order_crossover(const AugmentedChromosome& a,
                                           const AugmentedChromosome& b, Rng& rng) {
    const int n = static_cast<int>(a.order.size());
    int lo = rng.uniform_int(0, n - 1);
    int hi = rng.uniform_int(0, n - 1);
    if (lo > hi) std::swap(lo, hi);
    AugmentedChromosome child;
    child.order.assign(static_cast<std::size_t>(n), -1);
    child.connect_tail.assign(static_cast<std::size_t>(n), 0);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int k = lo; k <= hi; ++k) {
        child.order[static_cast<std::size_t>(k)] = a.order[static_cast<std::size_t>(k)];
        child.connect_tail[static_cast<std::size_t>(k)] = a.connect_tail[static_cast<std::size_t>(k)];
        used[static_cast<std::size_t>(a.order[static_cast<std::size_t>(k)])] = 1;
    }
    int fill = (hi + 1) % n;
    for (int step = 0; step < n; ++step) {
        const int src = (hi + 1 + step) % n;
        const int gene = b.order[static_cast<std::size_t>(src)];
        if (used[static_cast<std::size_t>(gene)]) continue;
        child.order[static_cast<std::size_t>(fill)] = gene;
        child.connect_tail[static_cast<std::size_t>(fill)] = b.connect_tail[static_cast<std::size_t>(src)];
        used[static_cast<std::size_t>(gene)] = 1;
        fill = (fill + 1) % n;
    }
    return child;
}

inline void invert_region(AugmentedChromosome& c, Rng& rng) {
    const int n = static_cast<int>(c.order.size());
    int lo = rng.uniform_int(0, n - 1);
    int hi = rng.uniform_int(0, n - 1);
    if (lo > hi) std::swap(lo, hi);
    std::reverse(c.order.begin() + lo, c.order.begin() + hi + 1);
    std::reverse(c.connect_tail.begin() + lo, c.connect_tail.begin() + hi + 1);
}

inline void rotate_region(AugmentedChromosome& c, Rng& rng) {
    const int n = static_cast<int>(c.order.size());
    int lo = rng.uniform_int(0, n - 1);
    int hi = rng.uniform_int(0, n - 1);
    if (lo > hi) std::swap(lo, hi);
    const int len = hi - lo + 1;
    if (len < 2) return;
    const int shift = rng.uniform_int(1, len - 1);
    std::rotate(c.order.begin() + lo, c.order.begin() + lo + shift, c.order.begin() + hi + 1);
    std::rotate(c.connect_tail.begin() + lo, c.connect_tail.begin() + lo + shift,
                c.connect_tail.begin() + hi + 1);
}

inline void swap_genes(AugmentedChromosome& c, Rng& rng) {
    const int n = static_cast<int>(c.order.size());
    const int p = rng.uniform_int(0, n - 1);
    const int q = rng.uniform_int(0, n - 1);
    std::swap(c.order[static_cast<std::size_t>(p)], c.order[static_cast<std::size_t>(q)]);
    std::swap(c.connect_tail[static_cast<std::size_t>(p)], c.connect_tail[static_cast<std::size_t>(q)]);
}

inline void flip_directions(AugmentedChromosome& c, Rng& rng) {
    for (auto& b : c.connect_tail)
        if (rng.coin()) b ^= 1;
}

}  // namespace detail

// The genetic baseline. Tournament selection of size 2 with single-individual
// elitism; operator rates follow the config. Stops after max_generations or
// once the best length has not improved for stagnation_window generations.
// Fully deterministic for a fixed seed.
inline std::pair<SppSolution, GaStats> run_ga(const Workspace& ws, const GaConfig& cfg) {
    internal_check(cfg.population_size >= 2, "run_ga: population must be at least 2");
    const auto t0 = std::chrono::steady_clock::now();
    const int n = ws.size();
    Rng rng(cfg.seed);

    std::vector<AugmentedChromosome> pop;
    std::vector<double> fit;
    pop.reserve(static_cast<std::size_t>(cfg.population_size));
    fit.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        pop.push_back(detail::random_chromosome(n, rng));
        fit.push_back(ga_fitness(pop.back(), ws));
    }

    auto best_index = [&]() {
        return static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());
    };
    auto tournament = [&]() -> const AugmentedChromosome& {
        const int a = rng.uniform_int(0, cfg.population_size - 1);
        const int b = rng.uniform_int(0, cfg.population_size - 1);
        return fit[static_cast<std::size_t>(a)] <= fit[static_cast<std::size_t>(b)]
                   ? pop[static_cast<std::size_t>(a)]
                   : pop[static_cast<std::size_t>(b)];
    };

    GaStats stats;
    AugmentedChromosome best = pop[best_index()];
    double best_fit = fit[best_index()];
    auto record = [&]() {
        GaGenerationStats gs;
        gs.best = *std::min_element(fit.begin(), fit.end());
        gs.mean = std::accumulate(fit.begin(), fit.end(), 0.0) / static_cast<double>(fit.size());
        stats.generations.push_back(gs);
    };
    record();

    int stagnant = 0;
    for (int gen = 0; gen < cfg.max_generations && stagnant < cfg.stagnation_window; ++gen) {
        std::vector<AugmentedChromosome> next;
        std::vector<double> next_fit;
        next.reserve(pop.size());
        next_fit.reserve(pop.size());
        next.push_back(pop[best_index()]);
        next_fit.push_back(fit[best_index()]);
        while (static_cast<int>(next.size()) < cfg.population_size) {
            AugmentedChromosome child = tournament();
            if (rng.coin(cfg.crossover_rate)) child = detail::order_crossover(child, tournament(), rng);
            if (rng.coin(cfg.inversion_rate)) detail::invert_region(child, rng);
            if (rng.coin(cfg.rotation_rate)) detail::rotate_region(child, rng);
            if (rng.coin(cfg.mutation_rate)) detail::swap_genes(child, rng);
            if (rng.coin(cfg.reversal_rate)) detail::flip_directions(child, rng);
            next_fit.push_back(ga_fitness(child, ws));
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        fit = std::move(next_fit);
        record();
        const std::size_t bi = best_index();
        if (fit[bi] < best_fit) {
            best_fit = fit[bi];
            best = pop[bi];
            stagnant = 0;
        } else {
            ++stagnant;
        }
        stats.generations_run = gen + 1;
    }

    stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    SppSolution sol;
    sol.order = chromosome_to_order(best);
    sol.length = best_fit;
    sol.h_trail = order_to_trail(n, sol.order);
    return {std::move(sol), std::move(stats)};
}

}  // namespace spp
