#pragma once

#include "dbnb/dataset.hpp"
#include "dbnb/density.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dbnb {

/// One connection weight per (class, attribute, bin) cell. Starts at 1 and only grows.
class WeightTable {
public:
    WeightTable() = default;
    explicit WeightTable(CellLayout layout) : layout_(std::move(layout)), weights_(layout_.size(), 1.0) {}

    const CellLayout& layout() const { return layout_; }
    double weight(std::size_t k, std::size_t m, std::size_t b) const { return weights_[layout_.cell(k, m, b)]; }
    void add(std::size_t k, std::size_t m, std::size_t b, double delta) { weights_[layout_.cell(k, m, b)] += delta; }

    const std::vector<double>& raw() const { return weights_; }
    static WeightTable from_raw(CellLayout layout, std::vector<double> weights);

    friend bool operator==(const WeightTable&, const WeightTable&) = default;

private:
    CellLayout layout_;
    std::vector<double> weights_;
};

struct TrainConfig {
    double alpha = 2.0;
    std::size_t max_rounds = 500;
    double tag_gain = 0.25;
    /// Unset means 1 / (10 * n_train).
    std::optional<double> epsilon_floor;
    /// Empty means default_topology(schema).
    Topology topology;

    /// Throws ArgumentError on out-of-range fields.
    void validate() const;
    double epsilon_for(std::size_t n_train) const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct TrainTrace {
    std::vector<std::size_t> errors_per_epoch;
    std::optional<std::size_t> converged_epoch;  // 1-based

    std::size_t epochs() const { return errors_per_epoch.size(); }
    bool converged() const { return converged_epoch.has_value(); }

    friend bool operator==(const TrainTrace&, const TrainTrace&) = default;
};

/// Entire network state: fitted density, connection weights, gating constants and
/// the configuration and trace that produced them.
struct Model {
    Density density;
    WeightTable weights;
    GateParams gate;
    TrainConfig config;
    TrainTrace trace;
    /// Layout of the files the model was trained from; reused when reading evaluation data.
    ParseOptions input_format;

    const Schema& schema() const { return density.schema; }
    Topology topology() const;
    bool fitted() const { return density.fitted(); }

    friend bool operator==(const Model&, const Model&) = default;
};

/// Untrained network around a fitted density: unit weights, gate from `config`.
Model make_model(Density density, const TrainConfig& config);

}  // namespace dbnb
