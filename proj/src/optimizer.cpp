#include "aapso/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aapso/errors.hpp"

namespace aapso {

std::string to_string(Variant variant) {
    switch (variant) {
        case Variant::pso: return "pso";
        case Variant::alt_pso: return "alt_pso";
        case Variant::aapso: return "aapso";
    }
    throw std::invalid_argument("unknown variant");
}

Variant variant_from_string(const std::string& name) {
    if (name == "pso") return Variant::pso;
    if (name == "alt_pso") return Variant::alt_pso;
    if (name == "aapso") return Variant::aapso;
    throw ConfigError("variant: '" + name + "' is not one of pso, alt_pso, aapso");
}

void AdaptiveParams::validate() const {
    if (!(time_constant > 0.0)) throw ConfigError("adaptive_c: must be positive");
}

double adaptive_inertia(int iteration, int max_iterations, const AdaptiveParams& params) {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (iteration < 0 || iteration > max_iterations) {
        throw std::invalid_argument("iteration out of [0, max_iterations]");
    }
    const double fraction =
        params.schedule == InertiaSchedule::remaining_time
            ? static_cast<double>(max_iterations - iteration) / static_cast<double>(max_iterations)
            : static_cast<double>(iteration) / static_cast<double>(max_iterations);
    return 1.0 - std::exp(-params.time_constant * fraction);
}

void AltruismParams::validate() const {
    if (!(elite_fraction >= 0.0 && elite_fraction < 0.5)) {
        throw ConfigError("k_frac: elite fraction must lie in [0, 0.5)");
    }
    if (!(velocity_low < velocity_high)) {
        throw ConfigError("alpha_v/beta_v: velocity band must satisfy alpha_v < beta_v");
    }
}

void update_velocity(Agent& agent, const Mask& gbest_mask, double inertia_weight,
                     UniformSource& rng, bool per_dimension_draws) {
    if (agent.velocity.size() != gbest_mask.size()) {
        throw std::invalid_argument("gbest mask dimension does not match agent");
    }
    const auto toward_pbest = (agent.pbest_mask - agent.mask).cast<double>();
    const auto toward_gbest = (gbest_mask - agent.mask).cast<double>();
    if (per_dimension_draws) {
        for (Eigen::Index j = 0; j < agent.velocity.size(); ++j) {
            const double r1 = rng.uniform01();
            const double r2 = rng.uniform01();
            agent.velocity[j] = inertia_weight * agent.velocity[j] + r1 * toward_pbest[j] +
                                r2 * toward_gbest[j];
        }
    } else {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        agent.velocity = inertia_weight * agent.velocity + r1 * toward_pbest + r2 * toward_gbest;
    }
}

void update_positions(SwarmState& state, UniformSource& rng) {
    for (auto& agent : state.agents) {
        for (Eigen::Index j = 0; j < agent.velocity.size(); ++j) {
            agent.mask[j] = binarize(agent.velocity[j], rng);
        }
        agent.mask = repair_mask(std::move(agent.mask), rng);
    }
}

std::vector<int> rank_by_fitness_change(const std::vector<Agent>& agents) {
    std::vector<int> order(agents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&agents](int a, int b) {
        const double change_a = agents[static_cast<std::size_t>(a)].fitness -
                                agents[static_cast<std::size_t>(a)].prev_fitness;
        const double change_b = agents[static_cast<std::size_t>(b)].fitness -
                                agents[static_cast<std::size_t>(b)].prev_fitness;
        if (change_a != change_b) return change_a > change_b;
        const double fit_a = agents[static_cast<std::size_t>(a)].fitness;
        const double fit_b = agents[static_cast<std::size_t>(b)].fitness;
        if (fit_a != fit_b) return fit_a > fit_b;
        return a < b;
    });
    return order;
}

void altruism(SwarmState& state, const AltruismParams& params, UniformSource& rng) {
    const auto n = static_cast<int>(state.agents.size());
    if (n < 3) throw std::invalid_argument("altruism needs at least 3 agents");

    const auto ranked = rank_by_fitness_change(state.agents);
    const auto elites = std::clamp<int>(
        static_cast<int>(std::lround(params.elite_fraction * static_cast<double>(n))), 0, n);
    const int paired = (n - elites) / 2;
    const double select_low = params.select_low();
    const double select_high = params.select_high();

    for (int i = 0; i < paired; ++i) {
        auto& donor = state.agents[static_cast<std::size_t>(ranked[static_cast<std::size_t>(elites + i)])];
        auto& recipient = state.agents[static_cast<std::size_t>(ranked[static_cast<std::size_t>(n - 1 - i)])];
        for (Eigen::Index j = 0; j < donor.velocity.size(); ++j) {
            const double v = donor.velocity[j];
            bool fire = false;
            if (v > params.velocity_low && v < params.velocity_high) {
                const double draw = rng.uniform01();
                fire = draw < rng.uniform(select_low, select_high);
            } else {
                fire = rng.uniform01() < 0.5;
            }
            if (fire) {
                recipient.mask[j] = donor.mask[j];
                recipient.velocity[j] = donor.velocity[j];
                donor.velocity[j] = rng.uniform01();
                donor.mask[j] = binarize(donor.velocity[j], rng);
            }
        }
    }
    for (auto& agent : state.agents) {
        agent.mask = repair_mask(std::move(agent.mask), rng);
    }
}

void SwarmConfig::validate() const {
    if (population < 2) throw ConfigError("population: must be at least 2");
    if (iterations < 1) throw ConfigError("iterations: must be at least 1");
    if (!(accuracy_weight >= 0.0 && accuracy_weight <= 1.0)) {
        throw ConfigError("alpha: accuracy weight must lie in [0, 1]");
    }
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw ConfigError("val_fraction: must lie in (0, 1)");
    }
    altruism.validate();
    adaptive.validate();
}

RunResult run_optimizer(Variant variant, const Dataset& train, const Dataset& test,
                        const SwarmConfig& config, const KnnConfig& knn,
                        std::uint64_t seed, const std::string& positive_class,
                        const std::function<void(const SwarmState&)>& on_iteration,
                        int eval_workers) {
    config.validate();
    knn.validate();
    if (train.n_features() != test.n_features()) {
        throw std::invalid_argument("train and test feature counts differ");
    }

    RngStream rng(seed);
    const std::uint64_t val_seed = rng.next_u64();
    const auto [fit_data, val_data] = stratified_holdout(train, config.val_fraction, val_seed);

    const auto n_features = static_cast<int>(train.n_features());
    const FitnessParams fitness_params{config.accuracy_weight, n_features};
    const EvalContext ctx{fit_data, val_data, knn, fitness_params, std::max(eval_workers, 1)};

    SwarmState state = init_swarm(config.population, n_features, rng);
    state.max_iterations = config.iterations;
    evaluate_swarm(state, ctx);
    for (auto& agent : state.agents) agent.prev_fitness = agent.fitness;

    RunResult result;
    result.fitness_trace.reserve(static_cast<std::size_t>(config.iterations));
    for (int t = 1; t <= config.iterations; ++t) {
        const double w = variant == Variant::aapso
                             ? adaptive_inertia(t, config.iterations, config.adaptive)
                             : 1.0;
        for (auto& agent : state.agents) {
            update_velocity(agent, state.gbest_mask, w, rng, config.per_dimension_draws);
        }
        update_positions(state, rng);
        evaluate_swarm(state, ctx);
        if (variant != Variant::pso) {
            altruism(state, config.altruism, rng);
        }
        for (auto& agent : state.agents) agent.prev_fitness = agent.fitness;
        state.iteration = t;
        result.fitness_trace.push_back(state.gbest_fitness);
        if (on_iteration) on_iteration(state);
    }

    result.best_mask = state.gbest_mask;
    result.best_fitness = state.gbest_fitness;
    result.selected_count = selected_count(state.gbest_mask);
    result.variant = variant;
    result.seed = seed;

    const std::string positive =
        positive_class.empty() ? train.classes().back() : positive_class;
    const auto train_masked = select_columns(train, state.gbest_mask);
    const auto test_masked = select_columns(test, state.gbest_mask);
    const auto predicted = knn_classify(train_masked, test_masked, knn);
    result.test_metrics = score(predicted, test.labels(), positive);
    return result;
}

} // namespace aapso
