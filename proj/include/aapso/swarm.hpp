#pragma once

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "aapso/dataset.hpp"
#include "aapso/knn.hpp"
#include "aapso/rng.hpp"

namespace aapso {

/// Fitness weighting: accuracy_weight * accuracy
///                    + (1 - accuracy_weight) * left_out / total.
struct FitnessParams {
    double accuracy_weight = 0.98;
    int total_features = 0;

    void validate() const;
};

/// Numerically stable logistic 1 / (1 + e^-x). Satisfies
/// sigmoid(-x) == 1 - sigmoid(x) exactly in this implementation.
double sigmoid(double x);

/// Sample a bit from a velocity: 1 iff sigmoid(velocity) >= draw, with one
/// uniform01 draw consumed per call, so the bit is 1 with probability
/// sigmoid(velocity).
int binarize(double velocity, UniformSource& rng);

/// Mask fitness, larger is better. `selected_count` must lie in
/// [1, total_features]; throws std::invalid_argument otherwise.
double fitness_value(double accuracy, int selected_count, const FitnessParams& params);

/// Number of set bits.
inline int selected_count(const Mask& mask) { return mask.sum(); }

/// One swarm member. The mask always has at least one set bit after repair;
/// pbest tracks the best (fitness, mask) this agent has evaluated, and
/// prev_fitness holds the previous iteration's fitness for ranking by
/// improvement.
struct Agent {
    Eigen::ArrayXd velocity;
    Mask mask;
    Mask pbest_mask;
    double pbest_fitness = 0.0;
    double fitness = 0.0;
    double prev_fitness = 0.0;
};

struct SwarmState {
    std::vector<Agent> agents;
    Mask gbest_mask;
    double gbest_fitness = 0.0;
    int iteration = 0;
    int max_iterations = 0;
};

/// Best-candidate comparison shared by pbest and gbest updates: a candidate
/// wins on strictly higher fitness; within a 1e-12 tie band (and never below
/// the incumbent) it wins only with fewer selected features, so the recorded
/// best fitness never decreases.
bool improves_best(double cand_fitness, int cand_count,
                   double incumbent_fitness, int incumbent_count);

/// If the mask has at least one set bit, return it unchanged; otherwise set
/// exactly one uniformly random bit (one draw).
Mask repair_mask(Mask mask, UniformSource& rng);

/// Fresh swarm: per agent, `n_features` velocity draws i.i.d. uniform(0,1)
/// followed by one binarize draw per dimension, then mask repair. pbest
/// starts at the initial mask with an unevaluated (lowest) fitness.
/// Requires population >= 2 and n_features >= 1.
SwarmState init_swarm(int population, int n_features, UniformSource& rng);

/// Wrapper evaluation of one mask: k-NN is fitted on the masked `fit_data`
/// and scored on the masked `val_data`; returns {fitness, accuracy}.
/// Deterministic, draws nothing, and safe to call concurrently.
std::pair<double, double> evaluate_mask(const Mask& mask, const Dataset& fit_data,
                                        const Dataset& val_data, const KnnConfig& knn,
                                        const FitnessParams& params);

/// Everything evaluate_mask needs, bundled for the optimizer loop.
/// `workers` > 1 fans the per-agent evaluations out to that many parallel
/// tasks; evaluations are pure and join before any state mutation, so the
/// results are identical for every worker count.
struct EvalContext {
    const Dataset& fit_data;
    const Dataset& val_data;
    KnnConfig knn;
    FitnessParams fitness;
    int workers = 1;
};

/// Evaluate every agent's current mask, then refresh pbest/gbest with the
/// improves_best tie rule (agents scanned in index order).
void evaluate_swarm(SwarmState& state, const EvalContext& ctx);

} // namespace aapso
