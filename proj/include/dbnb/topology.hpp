#pragma once

#include "dbnb/dataset.hpp"
#include "dbnb/density.hpp"
#include "dbnb/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace dbnb {

struct SearchSpec {
    /// Candidate bin counts per attribute, tried in the listed order.
    std::vector<std::vector<std::size_t>> candidates;
    /// Maximum number of distinct topologies trained.
    std::size_t budget = 200;
    /// Concurrent trainings within one sweep.
    std::size_t parallelism = 1;
    /// Sweep-combine-verify rounds before giving up on further improvement.
    std::size_t max_passes = 4;
    /// Train every combination instead (only sensible for tiny spaces).
    bool exhaustive = false;

    /// Throws ArgumentError when a range is empty, a discrete attribute is offered
    /// a count other than its value count, or the budget is zero.
    void validate(const Schema& schema) const;
};

/// Candidates lo..hi for continuous attributes, the value count for discrete ones.
SearchSpec make_search_spec(const Schema& schema, std::size_t lo, std::size_t hi);

struct Trial {
    Topology topology;
    double train_accuracy = 0.0;
    double validation_accuracy = 0.0;
    std::size_t epochs = 0;
    bool converged = false;
};

struct SearchResult {
    Topology best;
    double best_accuracy = 0.0;
    /// Every distinct topology trained, in the order trials were scheduled.
    std::vector<Trial> trials;
    bool truncated = false;
};

using TrialObserver = std::function<void(const Trial&)>;

/// Starting point: 5 bins per continuous attribute and the value count per discrete
/// one, replaced by the first candidate where that value is not on offer.
Topology baseline_topology(const Schema& schema, const SearchSpec& spec);

/// Coordinate ascent on validation accuracy. Each pass sweeps every attribute over
/// its candidates with the others held at the current topology, combines the
/// per-attribute improvements into one topology and trains it, then moves to the
/// best of the combination and the single-attribute winners. Stops when a pass does
/// not improve, after max_passes, or when the budget runs out (truncated = true).
/// The result does not depend on `parallelism`.
SearchResult coordinate_search(const Dataset& train, const Dataset& validation, const SearchSpec& spec,
                               const TrainConfig& base_config, const TrialObserver& observer = {});

}  // namespace dbnb
