#pragma once

#include "dbnb/dataset.hpp"
#include "dbnb/density.hpp"
#include "dbnb/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testkit {

/// Random labeled data small enough for brute-force checking.
struct DataShape {
    std::size_t max_examples = 20;
    std::size_t max_attributes = 4;
    std::size_t max_classes = 3;
    /// Integer-valued continuous attributes (exact bin arithmetic) or arbitrary reals.
    bool integer_values = true;
};

dbnb::Dataset random_dataset(std::mt19937_64& rng, const DataShape& shape = {});
dbnb::Topology random_topology(std::mt19937_64& rng, const dbnb::Schema& schema, std::size_t max_bins = 6);
/// A point in or somewhat beyond the training ranges.
std::vector<double> random_query(std::mt19937_64& rng, const dbnb::Dataset& data);

/// Four-example exclusive-or table over two binary-valued continuous inputs.
dbnb::Dataset xor_dataset();

/// Fitted statistics recomputed without the production binning or table code:
/// bins by exact nearest-center search (ties to the upper bin), counts and tag
/// ranges by direct enumeration of the examples.
struct OracleCell {
    std::uint64_t count = 0;
    double probability = 0.0;
    /// Empty when no example falls in the cell.
    std::vector<dbnb::ValueRange> tag;
};

struct Oracle {
    std::vector<std::size_t> bins;  // per attribute
    /// cells[k][m][b]
    std::vector<std::vector<std::vector<OracleCell>>> cells;
};

/// Requires integer-valued continuous attributes.
Oracle brute_force_fit(const dbnb::Dataset& data, const dbnb::Topology& topology);
std::size_t oracle_bin(const dbnb::Dataset& data, const dbnb::Topology& topology, std::size_t m, double value);

/// Empty when the fitted density agrees with the oracle exactly; otherwise the first difference.
std::string compare_with_oracle(const dbnb::Density& density, const Oracle& oracle);

}  // namespace testkit
