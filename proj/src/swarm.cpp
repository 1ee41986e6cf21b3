#include "aapso/swarm.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "aapso/errors.hpp"

namespace aapso {

namespace {
constexpr double kFitnessTieEps = 1e-12;
constexpr double kUnevaluated = -std::numeric_limits<double>::infinity();
} // namespace

void FitnessParams::validate() const {
    if (!(accuracy_weight >= 0.0 && accuracy_weight <= 1.0)) {
        throw ConfigError("alpha: accuracy weight must lie in [0, 1]");
    }
    if (total_features < 1) throw ConfigError("total_features: must be positive");
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

int binarize(double velocity, UniformSource& rng) {
    return sigmoid(velocity) >= rng.uniform01() ? 1 : 0;
}

double fitness_value(double accuracy, int selected, const FitnessParams& params) {
    if (selected < 1 || selected > params.total_features) {
        throw std::invalid_argument("selected feature count out of [1, total_features]");
    }
    const double left_out_ratio =
        static_cast<double>(params.total_features - selected) / static_cast<double>(params.total_features);
    return params.accuracy_weight * accuracy + (1.0 - params.accuracy_weight) * left_out_ratio;
}

bool improves_best(double cand_fitness, int cand_count,
                   double incumbent_fitness, int incumbent_count) {
    if (cand_fitness < incumbent_fitness) return false;
    if (cand_fitness > incumbent_fitness + kFitnessTieEps) return true;
    return cand_count < incumbent_count;
}

Mask repair_mask(Mask mask, UniformSource& rng) {
    if ((mask == 1).any()) return mask;
    const auto d = static_cast<double>(mask.size());
    const auto pick = std::min<Eigen::Index>(mask.size() - 1,
                                             static_cast<Eigen::Index>(rng.uniform01() * d));
    mask[pick] = 1;
    return mask;
}

SwarmState init_swarm(int population, int n_features, UniformSource& rng) {
    if (population < 2) throw std::invalid_argument("swarm needs at least 2 agents");
    if (n_features < 1) throw std::invalid_argument("swarm needs at least 1 dimension");

    SwarmState state;
    state.agents.reserve(static_cast<std::size_t>(population));
    for (int i = 0; i < population; ++i) {
        Agent agent;
        agent.velocity = Eigen::ArrayXd(n_features);
        for (int j = 0; j < n_features; ++j) agent.velocity[j] = rng.uniform01();
        agent.mask = Mask(n_features);
        for (int j = 0; j < n_features; ++j) agent.mask[j] = binarize(agent.velocity[j], rng);
        agent.mask = repair_mask(std::move(agent.mask), rng);
        agent.pbest_mask = agent.mask;
        agent.pbest_fitness = kUnevaluated;
        agent.fitness = kUnevaluated;
        agent.prev_fitness = kUnevaluated;
        state.agents.push_back(std::move(agent));
    }
    state.gbest_mask = Mask::Zero(n_features);
    state.gbest_fitness = kUnevaluated;
    state.iteration = 0;
    return state;
}

std::pair<double, double> evaluate_mask(const Mask& mask, const Dataset& fit_data,
                                        const Dataset& val_data, const KnnConfig& knn,
                                        const FitnessParams& params) {
    const auto fit_masked = select_columns(fit_data, mask);
    const auto val_masked = select_columns(val_data, mask);
    const auto predicted = knn_classify(fit_masked, val_masked, knn);

    Eigen::Index correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == val_data.labels()[i]) ++correct;
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(predicted.size());
    return {fitness_value(accuracy, selected_count(mask), params), accuracy};
}

void evaluate_swarm(SwarmState& state, const EvalContext& ctx) {
    if (ctx.workers > 1 && state.agents.size() > 1) {
        std::vector<std::future<double>> pending;
        std::size_t next = 0;
        while (next < state.agents.size()) {
            pending.clear();
            while (next < state.agents.size() &&
                   pending.size() < static_cast<std::size_t>(ctx.workers)) {
                const auto& agent = state.agents[next++];
                pending.push_back(std::async(std::launch::async, [&agent, &ctx] {
                    return evaluate_mask(agent.mask, ctx.fit_data, ctx.val_data, ctx.knn,
                                         ctx.fitness)
                        .first;
                }));
            }
            for (std::size_t i = 0; i < pending.size(); ++i) {
                state.agents[next - pending.size() + i].fitness = pending[i].get();
            }
        }
    } else {
        for (auto& agent : state.agents) {
            agent.fitness =
                evaluate_mask(agent.mask, ctx.fit_data, ctx.val_data, ctx.knn, ctx.fitness).first;
        }
    }
    for (auto& agent : state.agents) {
        if (agent.pbest_fitness == kUnevaluated ||
            improves_best(agent.fitness, selected_count(agent.mask),
                          agent.pbest_fitness, selected_count(agent.pbest_mask))) {
            agent.pbest_fitness = agent.fitness;
            agent.pbest_mask = agent.mask;
        }
    }
    for (const auto& agent : state.agents) {
        if (state.gbest_fitness == kUnevaluated ||
            improves_best(agent.pbest_fitness, selected_count(agent.pbest_mask),
                          state.gbest_fitness, selected_count(state.gbest_mask))) {
            state.gbest_fitness = agent.pbest_fitness;
            state.gbest_mask = agent.pbest_mask;
        }
    }
}

} // namespace aapso
