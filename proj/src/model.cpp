#include "dbnb/model.hpp"

#include "dbnb/error.hpp"

#include <cmath>

namespace dbnb {

WeightTable WeightTable::from_raw(CellLayout layout, std::vector<double> weights) {
    if (weights.size() != layout.size()) throw ArgumentError("weight table does not match its layout");
    WeightTable t;
    t.layout_ = std::move(layout);
    t.weights_ = std::move(weights);
    return t;
}

void TrainConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be positive");
    if (max_rounds < 1) throw ArgumentError("max_rounds must be at least 1");
    if (!(tag_gain > 0.0 && tag_gain <= 1.0)) throw ArgumentError("tag_gain must lie in (0, 1]");
    if (epsilon_floor && !(*epsilon_floor > 0.0 && std::isfinite(*epsilon_floor)))
        throw ArgumentError("epsilon_floor must be positive");
}

double TrainConfig::epsilon_for(std::size_t n_train) const {
    if (epsilon_floor) return *epsilon_floor;
    return 1.0 / (10.0 * static_cast<double>(n_train));
}

Topology Model::topology() const {
    Topology t;
    for (std::size_t m = 0; m < density.layout().attributes(); ++m) t.bin_counts.push_back(density.layout().bins(m));
    return t;
}

Model make_model(Density density, const TrainConfig& config) {
    config.validate();
    if (!density.fitted()) throw StateError("cannot build a model from an unfitted density");
    Model model;
    model.gate = GateParams{config.tag_gain, config.epsilon_for(density.joint.n_train())};
    model.weights = WeightTable(density.layout());
    model.density = std::move(density);
    model.config = config;
    model.config.topology = model.topology();
    return model;
}

}  // namespace dbnb
