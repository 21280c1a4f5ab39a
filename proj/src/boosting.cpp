#include "dbnb/boosting.hpp"

#include "dbnb/error.hpp"

#include <cmath>

namespace dbnb {

namespace {

/// Per-example quantities that do not change while weights are boosted.
struct EpochCache {
    std::vector<std::vector<std::size_t>> bins;
    std::vector<std::vector<double>> gated_logs;
};

EpochCache build_cache(const Model& model, const Dataset& train) {
    EpochCache cache;
    cache.bins.reserve(train.size());
    cache.gated_logs.reserve(train.size());
    for (const auto& ex : train.examples) {
        auto bins = model.density.bin_indices(ex.values);
        cache.gated_logs.push_back(gated_log_likelihoods(model, ex.values, bins));
        cache.bins.push_back(std::move(bins));
    }
    return cache;
}

std::size_t run_cached_epoch(Model& model, const Dataset& train, const EpochCache& cache, double alpha) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto& bins = cache.bins[i];
        const auto scores = scores_from_logs(model, cache.gated_logs[i], bins);
        const auto label = train.examples[i].label;
        const auto winner = scores.winner();
        if (winner == label) continue;
        ++errors;
        if (scores.log_scores[label] < scores.log_scores[winner])
            apply(model.weights, boost_example(bins, label, scores, alpha));
    }
    return errors;
}

void check_compatible(const Model& model, const Dataset& data) {
    if (!model.fitted()) throw StateError("model is not fitted");
    if (!(data.schema == model.schema())) throw ArgumentError("dataset schema does not match the model");
}

}  // namespace

double boost_delta(double log_true, double log_winner, double alpha) {
    return alpha * (1.0 - std::exp(log_true - log_winner));
}

BoostUpdate boost_example(std::span<const std::size_t> bins, std::size_t true_class, const ClassScores& scores,
                          double alpha) {
    if (true_class >= scores.log_scores.size()) throw ArgumentError("true class out of range");
    const auto winner = scores.winner();
    if (winner == true_class || !(scores.log_scores[true_class] < scores.log_scores[winner]))
        throw ArgumentError("boost_example called on an example that is not outscored");
    BoostUpdate u;
    u.true_class = true_class;
    u.bins.assign(bins.begin(), bins.end());
    u.delta = boost_delta(scores.log_scores[true_class], scores.log_scores[winner], alpha);
    return u;
}

void apply(WeightTable& weights, const BoostUpdate& update) {
    for (std::size_t m = 0; m < update.bins.size(); ++m) weights.add(update.true_class, m, update.bins[m], update.delta);
}

std::size_t run_epoch(Model& model, const Dataset& train, const TrainConfig& config) {
    check_compatible(model, train);
    config.validate();
    return run_cached_epoch(model, train, build_cache(model, train), config.alpha);
}

Model train(const Dataset& trainset, const TrainConfig& config, const EpochObserver& observer) {
    config.validate();
    if (trainset.empty()) throw ArgumentError("training set is empty");
    const Topology topology = config.topology.bin_counts.empty()
                                  ? default_topology(trainset.schema)
                                  : expand_topology(config.topology, trainset.schema);

    Model model = make_model(fit_density(trainset, topology), config);
    const auto cache = build_cache(model, trainset);
    for (std::size_t epoch = 1; epoch <= config.max_rounds; ++epoch) {
        const auto errors = run_cached_epoch(model, trainset, cache, config.alpha);
        model.trace.errors_per_epoch.push_back(errors);
        if (observer) observer(epoch, errors);
        if (errors == 0) {
            model.trace.converged_epoch = epoch;
            break;
        }
    }
    return model;
}

}  // namespace dbnb
