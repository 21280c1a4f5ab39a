#include "dbnb/density.hpp"

#include "dbnb/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace dbnb {

Topology parse_topology(std::string_view text) {
    Topology t;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find_first_of(",-", pos);
        if (end == std::string_view::npos) end = text.size();
        const auto field = text.substr(pos, end - pos);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || value == 0)
            throw ArgumentError("bad bin count '" + std::string(field) + "' in topology '" + std::string(text) + "'");
        t.bin_counts.push_back(value);
        pos = end + 1;
    }
    return t;
}

std::string to_string(const Topology& topology) {
    std::string out;
    for (std::size_t i = 0; i < topology.bin_counts.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(topology.bin_counts[i]);
    }
    return out;
}

Topology default_topology(const Schema& schema, std::size_t continuous_bins) {
    Topology t;
    for (const auto& a : schema.attributes)
        t.bin_counts.push_back(a.discrete() ? a.values.size() : continuous_bins);
    return t;
}

Topology expand_topology(const Topology& topology, const Schema& schema) {
    if (topology.size() != 1) return topology;
    return default_topology(schema, topology.bin_counts.front());
}

void validate_topology(const Topology& topology, const Schema& schema) {
    if (topology.size() != schema.attribute_count())
        throw ArgumentError("topology has " + std::to_string(topology.size()) + " entries, schema has " +
                            std::to_string(schema.attribute_count()) + " attributes");
    for (std::size_t m = 0; m < topology.size(); ++m) {
        const auto& a = schema.attributes[m];
        if (topology.bin_counts[m] < 1) throw ArgumentError("attribute '" + a.name + "' needs at least one bin");
        if (a.discrete() && topology.bin_counts[m] != a.values.size())
            throw ArgumentError("discrete attribute '" + a.name + "' must use " + std::to_string(a.values.size()) +
                                " bins, got " + std::to_string(topology.bin_counts[m]));
    }
}

BinSpec make_bin_spec(std::span<const double> values, std::size_t count) {
    if (values.empty()) throw ArgumentError("cannot build a bin grid from no values");
    if (count < 1) throw ArgumentError("bin count must be at least 1");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return BinSpec{*lo, *hi, count};
}

std::size_t bin_index(const BinSpec& spec, double value) {
    const double range = spec.max - spec.min;
    if (!(range > 0.0) || !(value > spec.min)) return 0;
    if (value >= spec.max) return spec.count - 1;
    const double scaled = (value - spec.min) * static_cast<double>(spec.count) / range;
    const auto bin = static_cast<std::size_t>(std::floor(scaled));
    return std::min(bin, spec.count - 1);
}

CellLayout::CellLayout(std::size_t classes, std::vector<std::size_t> bins_per_attribute)
    : classes_(classes), bins_(std::move(bins_per_attribute)) {
    offsets_.reserve(bins_.size());
    for (auto b : bins_) {
        offsets_.push_back(stride_);
        stride_ += b;
    }
}

JointTable::JointTable(CellLayout layout) : layout_(std::move(layout)), counts_(layout_.size(), 0) {}

double JointTable::probability(std::size_t k, std::size_t m, std::size_t b) const {
    if (n_train_ == 0) throw StateError("joint table is empty");
    return static_cast<double>(count(k, m, b)) / static_cast<double>(n_train_);
}

void JointTable::add(std::size_t k, std::span<const std::size_t> bins) {
    for (std::size_t m = 0; m < bins.size(); ++m) ++counts_[layout_.cell(k, m, bins[m])];
    ++n_train_;
}

JointTable JointTable::from_counts(CellLayout layout, std::vector<std::uint64_t> counts, std::uint64_t n_train) {
    if (counts.size() != layout.size()) throw ArgumentError("count table does not match its layout");
    JointTable t;
    t.layout_ = std::move(layout);
    t.counts_ = std::move(counts);
    t.n_train_ = n_train;
    return t;
}

TagTable::TagTable(CellLayout layout)
    : layout_(std::move(layout)),
      populated_(layout_.size(), 0),
      ranges_(layout_.size() * layout_.attributes()) {}

std::span<const ValueRange> TagTable::tag(std::size_t k, std::size_t l, std::size_t b) const {
    const auto cell = layout_.cell(k, l, b);
    if (!populated_[cell]) return {};
    const auto m = layout_.attributes();
    return std::span<const ValueRange>(ranges_).subspan(cell * m, m);
}

void TagTable::widen(std::size_t k, std::span<const std::size_t> bins, std::span<const double> values) {
    const auto m_count = layout_.attributes();
    for (std::size_t l = 0; l < m_count; ++l) {
        const auto cell = layout_.cell(k, l, bins[l]);
        auto* tag = &ranges_[cell * m_count];
        if (!populated_[cell]) {
            for (std::size_t j = 0; j < m_count; ++j) tag[j] = ValueRange{values[j], values[j]};
            populated_[cell] = 1;
            continue;
        }
        for (std::size_t j = 0; j < m_count; ++j) {
            tag[j].min = std::min(tag[j].min, values[j]);
            tag[j].max = std::max(tag[j].max, values[j]);
        }
    }
}

void TagTable::set(std::size_t k, std::size_t l, std::size_t b, std::span<const ValueRange> ranges) {
    const auto m_count = layout_.attributes();
    if (ranges.size() != m_count) throw ArgumentError("tag must hold one range per attribute");
    const auto cell = layout_.cell(k, l, b);
    std::copy(ranges.begin(), ranges.end(), ranges_.begin() + static_cast<std::ptrdiff_t>(cell * m_count));
    populated_[cell] = 1;
}

std::vector<std::size_t> Density::bin_indices(std::span<const double> values) const {
    if (!fitted()) throw StateError("density is not fitted");
    if (values.size() != bins.size())
        throw ArgumentError("example has " + std::to_string(values.size()) + " values, model expects " +
                            std::to_string(bins.size()));
    std::vector<std::size_t> out(values.size());
    for (std::size_t m = 0; m < values.size(); ++m) out[m] = bin_index(bins[m], values[m]);
    return out;
}

Density fit_density(const Dataset& train, const Topology& topology) {
    if (train.empty()) throw ArgumentError("cannot fit on an empty training set");
    const auto& schema = train.schema;
    validate_topology(topology, schema);
    const std::size_t m_count = schema.attribute_count();

    Density d;
    d.schema = schema;
    d.bins.reserve(m_count);
    std::vector<double> column(train.size());
    for (std::size_t m = 0; m < m_count; ++m) {
        const auto& attr = schema.attributes[m];
        if (attr.discrete()) {
            const double top = static_cast<double>(attr.values.size() - 1);
            d.bins.push_back(BinSpec{0.0, top, attr.values.size()});
            continue;
        }
        for (std::size_t i = 0; i < train.size(); ++i) column[i] = train.examples[i].values[m];
        d.bins.push_back(make_bin_spec(column, topology.bin_counts[m]));
    }

    CellLayout layout(schema.class_count(), topology.bin_counts);
    d.joint = JointTable(layout);
    d.tags = TagTable(layout);
    for (const auto& ex : train.examples) {
        if (ex.values.size() != m_count || ex.label >= schema.class_count())
            throw ArgumentError("training example does not conform to the schema");
        const auto bins = d.bin_indices(ex.values);
        d.joint.add(ex.label, bins);
        d.tags.widen(ex.label, bins, ex.values);
    }
    return d;
}

bool tag_violated(const Density& density, std::span<const double> values, std::span<const std::size_t> bins,
                  std::size_t k, std::size_t m) {
    const auto tag = density.tags.tag(k, m, bins[m]);
    if (tag.empty()) return values.size() > 1;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (j != m && !tag[j].contains(values[j])) return true;
    return false;
}

double tagged_likelihood(const Density& density, std::span<const double> values, std::span<const std::size_t> bins,
                         std::size_t k, std::size_t m, const GateParams& gate) {
    const auto count = density.joint.count(k, m, bins[m]);
    double p = count ? density.joint.probability(k, m, bins[m]) : gate.epsilon;
    if (tag_violated(density, values, bins, k, m)) p *= gate.tag_gain;
    return p;
}

double tagged_likelihood(const Density& density, std::span<const double> values, std::size_t k, std::size_t m,
                         const GateParams& gate) {
    if (!density.fitted()) throw StateError("density is not fitted");
    if (k >= density.schema.class_count() || m >= density.schema.attribute_count())
        throw ArgumentError("class or attribute index out of range");
    const auto bins = density.bin_indices(values);
    return tagged_likelihood(density, values, bins, k, m, gate);
}

}  // namespace dbnb
