#include "chebmotion/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

namespace chebmotion {

// Real-coded GA on the box |o_i| <= 4/pi. Everything that draws randomness
// goes through one mt19937_64 in a fixed order, so a seed pins the whole
// run.
SolverResult solve_ga(const OptimizationContext& ctx, std::uint64_t seed,
                      const GaOptions& options) {
    const auto t_start = std::chrono::steady_clock::now();
    const RmsObjective objective{ctx};
    const int dof = objective.dof();
    const double bound = 4.0 / std::numbers::pi;

    if (dof == 0) {
        const std::vector<double> empty;
        const double f = objective(empty);
        return SolverResult{empty,
                            eliminate_constraints(empty, ctx.task),
                            f,
                            0,
                            objective.evaluations(),
                            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                          t_start)
                                .count(),
                            SolverId::ga,
                            true};
    }

    const int pop_size = options.population > 0 ? options.population : std::max(60, 20 * dof);
    const double mutation_rate =
        options.mutation_rate > 0.0 ? options.mutation_rate : 1.0 / static_cast<double>(dof);
    const double mutation_sigma =
        options.mutation_sigma > 0.0 ? options.mutation_sigma : 0.1 * (2.0 * bound);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);
    std::uniform_real_distribution<double> uniform_box(-bound, bound);
    std::normal_distribution<double> normal01(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, pop_size - 1);

    const auto clip = [&](double v) { return std::clamp(v, -bound, bound); };

    using Individual = std::vector<double>;
    std::vector<Individual> population(static_cast<std::size_t>(pop_size),
                                       Individual(static_cast<std::size_t>(dof), 0.0));
    // Half small zero-mean perturbations around o = 0, half uniform. The
    // boundary solve amplifies the free coefficients hard, so "small" here
    // really is small; the uniform half carries the exploration.
    const double seed_sigma = 0.002 * bound;
    for (int i = 0; i < pop_size; ++i) {
        for (int j = 0; j < dof; ++j) {
            const double v = (i < pop_size / 2) ? seed_sigma * normal01(rng) : uniform_box(rng);
            population[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = clip(v);
        }
    }

    std::vector<double> fitness(static_cast<std::size_t>(pop_size));
    const auto evaluate_all = [&]() {
        for (int i = 0; i < pop_size; ++i)
            fitness[static_cast<std::size_t>(i)] = objective(population[static_cast<std::size_t>(i)]);
    };
    evaluate_all();

    const auto best_index = [&]() {
        return static_cast<int>(std::min_element(fitness.begin(), fitness.end()) -
                                fitness.begin());
    };

    Individual best = population[static_cast<std::size_t>(best_index())];
    double best_f = fitness[static_cast<std::size_t>(best_index())];

    const auto tournament = [&]() -> const Individual& {
        int winner = pick(rng);
        for (int k = 1; k < options.tournament_size; ++k) {
            const int challenger = pick(rng);
            if (fitness[static_cast<std::size_t>(challenger)] <
                fitness[static_cast<std::size_t>(winner)])
                winner = challenger;
        }
        return population[static_cast<std::size_t>(winner)];
    };

    int generation = 0;
    int stall = 0;
    double sigma = mutation_sigma;
    for (; generation < options.max_generations; ++generation) {
        if (options.on_generation) options.on_generation(generation, population, fitness);

        std::vector<Individual> next;
        next.reserve(static_cast<std::size_t>(pop_size));

        // Elitism: the two best survive unchanged.
        std::vector<int> order(static_cast<std::size_t>(pop_size));
        for (int i = 0; i < pop_size; ++i) order[static_cast<std::size_t>(i)] = i;
        std::partial_sort(order.begin(), order.begin() + std::min(2, pop_size), order.end(),
                          [&](int a, int b) {
                              return fitness[static_cast<std::size_t>(a)] <
                                     fitness[static_cast<std::size_t>(b)];
                          });
        for (int k = 0; k < std::min(2, pop_size); ++k)
            next.push_back(population[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]);

        while (static_cast<int>(next.size()) < pop_size) {
            Individual child_a = tournament();
            Individual child_b = tournament();
            if (uniform01(rng) < options.crossover_rate) {
                // Blend crossover: children uniform on the parent interval
                // widened by alpha on both sides.
                for (int j = 0; j < dof; ++j) {
                    const double pa = child_a[static_cast<std::size_t>(j)];
                    const double pb = child_b[static_cast<std::size_t>(j)];
                    const double lo = std::min(pa, pb);
                    const double hi = std::max(pa, pb);
                    const double pad = options.blend_alpha * (hi - lo);
                    std::uniform_real_distribution<double> blend(lo - pad, hi + pad);
                    child_a[static_cast<std::size_t>(j)] = clip(blend(rng));
                    child_b[static_cast<std::size_t>(j)] = clip(blend(rng));
                }
            }
            for (Individual* child : {&child_a, &child_b}) {
                for (int j = 0; j < dof; ++j) {
                    if (uniform01(rng) < mutation_rate) {
                        // Two-scale creep: the coarse scale explores, the
                        // fine one refines the incumbent basin.
                        const double scale = (uniform01(rng) < 0.5) ? sigma : 0.01 * sigma;
                        (*child)[static_cast<std::size_t>(j)] =
                            clip((*child)[static_cast<std::size_t>(j)] + scale * normal01(rng));
                    }
                }
                if (static_cast<int>(next.size()) < pop_size) next.push_back(*child);
            }
        }

        sigma *= options.mutation_decay;
        population = std::move(next);
        evaluate_all();

        const int bi = best_index();
        if (fitness[static_cast<std::size_t>(bi)] <
            best_f - 1e-12 * std::max(1.0, std::abs(best_f))) {
            best_f = fitness[static_cast<std::size_t>(bi)];
            best = population[static_cast<std::size_t>(bi)];
            stall = 0;
        } else if (fitness[static_cast<std::size_t>(bi)] < best_f) {
            best_f = fitness[static_cast<std::size_t>(bi)];
            best = population[static_cast<std::size_t>(bi)];
            ++stall;
        } else {
            ++stall;
        }
        if (stall >= options.stall_generations) {
            ++generation;
            break;
        }
    }

    return SolverResult{best,
                        eliminate_constraints(best, ctx.task),
                        best_f,
                        generation,
                        objective.evaluations(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count(),
                        SolverId::ga,
                        true};
}

} // namespace chebmotion
