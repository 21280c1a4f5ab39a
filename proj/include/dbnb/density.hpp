#pragma once

#include "dbnb/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbnb {

/// Bins per attribute: the tunable shape of the network.
struct Topology {
    std::vector<std::size_t> bin_counts;

    std::size_t size() const { return bin_counts.size(); }
    friend bool operator==(const Topology&, const Topology&) = default;
};

/// Parses "8,5,5" or "8-5-5". A single value is returned as a one-entry topology.
Topology parse_topology(std::string_view text);
/// Renders as "8-5-5-5-14-30-5-6".
std::string to_string(const Topology& topology);
/// `continuous_bins` for every continuous attribute, declared value count for discrete ones.
Topology default_topology(const Schema& schema, std::size_t continuous_bins = 5);
/// Expands a one-entry topology to every attribute (discrete attributes keep their value count).
Topology expand_topology(const Topology& topology, const Schema& schema);
/// Throws ArgumentError unless the topology fits the schema.
void validate_topology(const Topology& topology, const Schema& schema);

/// Equal-width grid over [min, max].
struct BinSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;

    double width() const { return (max - min) / static_cast<double>(count); }
    double center(std::size_t bin) const { return min + (static_cast<double>(bin) + 0.5) * width(); }
    friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

BinSpec make_bin_spec(std::span<const double> values, std::size_t count);

/// floor((value - min) / width) clamped to [0, count). For equal widths this is
/// the bin whose center is nearest to `value`; ties at a shared edge go to the upper bin.
std::size_t bin_index(const BinSpec& spec, double value);

/// Flat addressing of (class, attribute, bin) cells shared by the count, tag and weight tables.
class CellLayout {
public:
    CellLayout() = default;
    CellLayout(std::size_t classes, std::vector<std::size_t> bins_per_attribute);

    std::size_t classes() const { return classes_; }
    std::size_t attributes() const { return bins_.size(); }
    std::size_t bins(std::size_t attribute) const { return bins_[attribute]; }
    std::size_t size() const { return classes_ * stride_; }

    std::size_t cell(std::size_t k, std::size_t m, std::size_t b) const {
        return k * stride_ + offsets_[m] + b;
    }

    friend bool operator==(const CellLayout&, const CellLayout&) = default;

private:
    std::size_t classes_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::size_t> bins_;
    std::vector<std::size_t> offsets_;
};

/// Joint counts of (class, attribute bin) over the training set. Probabilities are
/// count / n_train, i.e. joint rather than class-conditional.
class JointTable {
public:
    JointTable() = default;
    explicit JointTable(CellLayout layout);

    const CellLayout& layout() const { return layout_; }
    std::uint64_t n_train() const { return n_train_; }
    std::uint64_t count(std::size_t k, std::size_t m, std::size_t b) const { return counts_[layout_.cell(k, m, b)]; }
    double probability(std::size_t k, std::size_t m, std::size_t b) const;

    /// Adds one example of class k whose attribute bins are `bins`.
    void add(std::size_t k, std::span<const std::size_t> bins);
    /// Rebuilds from raw counts; used by deserialisation.
    static JointTable from_counts(CellLayout layout, std::vector<std::uint64_t> counts, std::uint64_t n_train);
    const std::vector<std::uint64_t>& raw_counts() const { return counts_; }

    friend bool operator==(const JointTable&, const JointTable&) = default;

private:
    CellLayout layout_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t n_train_ = 0;
};

struct ValueRange {
    double min = 0.0;
    double max = 0.0;

    bool contains(double v) const { return v >= min && v <= max; }
    friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

/// For every populated cell (k, l, b): the (min, max) of each attribute over the
/// class-k training examples whose attribute l falls in bin b. Slot l of a tag is
/// the owning attribute's own range and never gates anything.
class TagTable {
public:
    TagTable() = default;
    explicit TagTable(CellLayout layout);

    const CellLayout& layout() const { return layout_; }
    /// Empty span when the cell was never populated.
    std::span<const ValueRange> tag(std::size_t k, std::size_t l, std::size_t b) const;
    bool populated(std::size_t k, std::size_t l, std::size_t b) const { return populated_[layout_.cell(k, l, b)]; }

    void widen(std::size_t k, std::span<const std::size_t> bins, std::span<const double> values);
    void set(std::size_t k, std::size_t l, std::size_t b, std::span<const ValueRange> ranges);

    friend bool operator==(const TagTable&, const TagTable&) = default;

private:
    CellLayout layout_;
    std::vector<char> populated_;
    std::vector<ValueRange> ranges_;  // layout_.size() * attributes
};

/// Likelihood gating parameters.
struct GateParams {
    /// Factor applied when a tag is violated; 1 disables gating.
    double tag_gain = 0.25;
    /// Value returned for empty cells in place of a zero probability.
    double epsilon = 0.0;

    friend bool operator==(const GateParams&, const GateParams&) = default;
};

/// The fitted first unit of the network. Immutable after fit_density.
struct Density {
    Schema schema;
    std::vector<BinSpec> bins;
    JointTable joint;
    TagTable tags;

    bool fitted() const { return !bins.empty(); }
    const CellLayout& layout() const { return joint.layout(); }
    std::vector<std::size_t> bin_indices(std::span<const double> values) const;

    friend bool operator==(const Density&, const Density&) = default;
};

/// Continuous attributes span the training extremes; discrete attributes span their
/// declared index range [0, v-1] with v bins so every token owns one bin.
Density fit_density(const Dataset& train, const Topology& topology);

/// True when some attribute j != m lies outside the tag of (k, m, bin of m).
/// An unpopulated cell has no observed range, so any other attribute violates it.
bool tag_violated(const Density& density, std::span<const double> values, std::span<const std::size_t> bins,
                  std::size_t k, std::size_t m);

/// P(U_m, C_k) from the joint table (epsilon for empty cells), times tag_gain once when
/// the tag is violated.
double tagged_likelihood(const Density& density, std::span<const double> values, std::size_t k, std::size_t m,
                         const GateParams& gate);

/// Same, with precomputed bin indices for `values`.
double tagged_likelihood(const Density& density, std::span<const double> values, std::span<const std::size_t> bins,
                         std::size_t k, std::size_t m, const GateParams& gate);

}  // namespace dbnb
