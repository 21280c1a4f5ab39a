#pragma once

#include "dbnb/dataset.hpp"
#include "dbnb/inference.hpp"
#include "dbnb/model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dbnb {

/// Weight increment for one misclassified example: `delta` is added to the cell
/// (true_class, m, bins[m]) of every attribute m.
struct BoostUpdate {
    std::size_t true_class = 0;
    std::vector<std::size_t> bins;
    double delta = 0.0;
};

/// alpha * (1 - P_k / P*_k) from log scores of the true and the winning class.
double boost_delta(double log_true, double log_winner, double alpha);

/// Builds the update for an example whose true class is outscored by another.
/// Throws ArgumentError when the example is not strictly outscored (caller bug).
BoostUpdate boost_example(std::span<const std::size_t> bins, std::size_t true_class, const ClassScores& scores,
                          double alpha);

void apply(WeightTable& weights, const BoostUpdate& update);

/// One pass over `train` in dataset order with in-place updates. Returns the number of
/// misclassified examples. An example that loses only by the lowest-index tie-break
/// counts as misclassified; its increment is alpha * (1 - 1) = 0, so it changes nothing.
std::size_t run_epoch(Model& model, const Dataset& train, const TrainConfig& config);

/// Called after every epoch with (epoch number, misclassified count).
using EpochObserver = std::function<void(std::size_t, std::size_t)>;

/// fit_density, then up to max_rounds epochs, stopping after the first error-free one.
Model train(const Dataset& trainset, const TrainConfig& config, const EpochObserver& observer = {});

}  // namespace dbnb
