#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "aapso/dataset.hpp"
#include "aapso/optimizer.hpp"
#include "aapso/swarm.hpp"

namespace aapso::testing {

/// Synthetic classification task where the class is fully determined by the
/// *mean* of a few informative coordinates: samples with mean <= low_mean
/// are class "lo", samples with mean >= high_mean are class "hi", and the
/// margin in between is rejected during sampling. No single informative
/// feature separates the classes on its own, noise features are i.i.d.
/// uniform, and the joint informative subspace separates them with a clean
/// margin — so a feature selector has to recover (most of) the informative
/// set to reach high accuracy.
struct SyntheticSpec {
    int n_per_class = 75;
    int n_features = 25;
    std::vector<int> informative = {2, 7, 11, 16, 23};
    double low_mean = 0.46;
    double high_mean = 0.54;
    // Deceptive columns carry a weak label-correlated shift inside heavy
    // noise: they look useful in isolation, so greedy search locks onto
    // them, but they cap well below the informative set's joint accuracy.
    std::vector<int> deceptive = {};
    double deceptive_shift = 0.12;
    double deceptive_noise = 0.38;
};

Dataset make_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// The standard deceptive 25-feature task: 5 jointly-informative columns,
/// 6 deceptive columns, 14 plain-noise columns.
SyntheticSpec deceptive_spec();

/// How many of the spec's informative columns the mask selects.
int informative_hits(const Mask& mask, const SyntheticSpec& spec);

/// Recorded-tape altruism fixture: a 3-agent, 5-dimensional swarm ranked
/// (agent 1, agent 0, agent 2) with one elite, plus the recorded draw tape
/// and the exact post-altruism state it must produce.
struct AltruismFixture {
    SwarmState state;
    AltruismParams params;
    std::vector<double> tape;
    Eigen::MatrixXd expected_velocity; // 3 x 5
    Eigen::MatrixXi expected_mask;     // 3 x 5
};

AltruismFixture make_altruism_fixture();

} // namespace aapso::testing
