#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aapso/dataset.hpp"
#include "aapso/knn.hpp"
#include "aapso/rng.hpp"
#include "aapso/swarm.hpp"

namespace aapso {

enum class Variant { pso, alt_pso, aapso };

std::string to_string(Variant variant);
Variant variant_from_string(const std::string& name); // throws ConfigError

/// Which time fraction drives the inertia schedule. Both run through the
/// same exponential form and agree at the halfway point; they differ in
/// where the bit-flip noise lands: under the sigmoid transfer a small
/// inertia weight drives velocities toward 0, where bits are coin flips, so
/// remaining_time finishes maximally exploratory while elapsed_time ramps
/// retention up toward the end.
enum class InertiaSchedule { remaining_time, elapsed_time };

struct AdaptiveParams {
    double time_constant = 1.0;
    InertiaSchedule schedule = InertiaSchedule::remaining_time;

    void validate() const;
};

/// Inertia weight for iteration t of T:
///   remaining_time:  w(t) = 1 - exp(-c * (T - t) / T)  (falls to 0)
///   elapsed_time:    w(t) = 1 - exp(-c * t / T)        (rises to 1 - e^-c)
/// Requires 0 <= t <= T, T >= 1.
double adaptive_inertia(int iteration, int max_iterations,
                        const AdaptiveParams& params = {});

/// Altruism configuration. Agents are ranked by fitness improvement; the top
/// elite_fraction share is preserved untouched while the better half of the
/// rest donates (bit, velocity) pairs to mirrored partners in the bottom
/// half. Velocities inside (velocity_low, velocity_high) — i.e. selection
/// probabilities in (sigmoid(low), sigmoid(high)), (0.5, 0.8) by default —
/// mark features whose selection is undecided and transfer under a biased
/// coin; all other dimensions transfer with probability 0.5.
struct AltruismParams {
    double elite_fraction = 0.40;
    double velocity_low = 0.0;
    double velocity_high = std::log(4.0);

    double select_low() const { return sigmoid(velocity_low); }
    double select_high() const { return sigmoid(velocity_high); }

    /// Throws ConfigError unless elite_fraction is in [0, 0.5) and
    /// velocity_low < velocity_high.
    void validate() const;
};

/// New velocity per dimension j:
///   v_j <- w * v_j + r1 * (pbest_j - mask_j) + r2 * (gbest_j - mask_j)
/// r1, r2 are uniform(0,1), drawn once per agent per call (r1 then r2), or
/// once per dimension when per_dimension_draws is set (r1_j then r2_j, j
/// ascending). The basic variant is the same update with w = 1.
void update_velocity(Agent& agent, const Mask& gbest_mask, double inertia_weight,
                     UniformSource& rng, bool per_dimension_draws = false);

/// Re-sample every agent's mask from its velocities (agents in index order,
/// one binarize draw per dimension, then repair). Fitness and bests are
/// untouched; the next evaluate_swarm refreshes them.
void update_positions(SwarmState& state, UniformSource& rng);

/// Agent indices ordered best-to-worst by fitness change
/// (fitness - prev_fitness), ties broken by higher current fitness, then by
/// lower agent index.
std::vector<int> rank_by_fitness_change(const std::vector<Agent>& agents);

/// Altruism pass over a ranked swarm (requires >= 3 agents):
///   - elites: the top round(elite_fraction * N) ranked agents, bit-exact
///     preserved;
///   - the remaining M agents pair the i-th best non-elite (donor) with the
///     i-th worst (recipient); an odd middle agent is left alone;
///   - per donor dimension (ascending): inside the velocity band the
///     transfer fires when draw1 < draw2 with draw1 ~ U(0,1) and draw2 ~
///     U(select_low, select_high) (two draws); outside the band it fires
///     when a single U(0,1) draw < 0.5;
///   - a fired transfer copies (mask bit, velocity) donor -> recipient, then
///     resets the donor velocity to a fresh U(0,1) draw and re-binarizes the
///     donor bit (one more draw);
///   - finally every agent's mask is repaired, in agent index order.
/// pbest/gbest are not modified here.
void altruism(SwarmState& state, const AltruismParams& params, UniformSource& rng);

/// All optimizer hyperparameters.
struct SwarmConfig {
    int population = 20;
    int iterations = 30;
    double accuracy_weight = 0.98;
    double val_fraction = 0.2; // internal validation share carved from train
    bool per_dimension_draws = false;
    AltruismParams altruism;
    AdaptiveParams adaptive;

    void validate() const;
};

struct RunResult {
    Mask best_mask;
    double best_fitness = 0.0;
    std::vector<double> fitness_trace; // per-iteration gbest, non-decreasing
    int selected_count = 0;
    Metrics test_metrics;
    Variant variant = Variant::pso;
    std::uint64_t seed = 0;
};

/// Full optimization run. Carves a stratified val_fraction split out of
/// `train` for fitness evaluation (the test set is only touched at the end),
/// then iterates: inertia weight (adaptive for aapso, 1 otherwise), velocity
/// and position updates, evaluation, and — for alt_pso/aapso — the altruism
/// pass. After the last iteration the best mask is scored on `test` with
/// k-NN fitted on all of `train`. Deterministic per seed.
///
/// `positive_class` selects the metrics' positive label; empty means the
/// lexicographically greatest class. `on_iteration`, when set, observes the
/// state after each completed iteration. `eval_workers` > 1 parallelizes
/// the per-agent fitness evaluations without changing any result.
RunResult run_optimizer(Variant variant, const Dataset& train, const Dataset& test,
                        const SwarmConfig& config, const KnnConfig& knn,
                        std::uint64_t seed, const std::string& positive_class = "",
                        const std::function<void(const SwarmState&)>& on_iteration = {},
                        int eval_workers = 1);

} // namespace aapso
