#include "testkit.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace testkit {

using namespace dbnb;

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Dataset random_dataset(std::mt19937_64& rng, const DataShape& shape) {
    Dataset d;
    const auto m_count = uniform(rng, 1, shape.max_attributes);
    const auto k_count = uniform(rng, 2, shape.max_classes);
    for (std::size_t m = 0; m < m_count; ++m) {
        AttributeSpec a{fmt::format("x{}", m), AttributeKind::continuous, {}};
        if (uniform(rng, 0, 3) == 0) {
            const auto v = uniform(rng, 2, 4);
            a.kind = v == 2 ? AttributeKind::binary : AttributeKind::categorical;
            for (std::size_t i = 0; i < v; ++i) a.values.push_back(fmt::format("v{}", i));
        }
        d.schema.attributes.push_back(std::move(a));
    }
    for (std::size_t k = 0; k < k_count; ++k) d.schema.classes.push_back(fmt::format("c{}", k));

    const auto n = uniform(rng, 1, shape.max_examples);
    std::uniform_real_distribution<double> real(-5.0, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
        Example ex;
        ex.row = i;
        ex.label = uniform(rng, 0, k_count - 1);
        for (const auto& a : d.schema.attributes) {
            if (a.discrete())
                ex.values.push_back(static_cast<double>(uniform(rng, 0, a.values.size() - 1)));
            else if (shape.integer_values)
                ex.values.push_back(static_cast<double>(uniform(rng, 0, 12)) - 4.0);
            else
                ex.values.push_back(real(rng));
        }
        d.examples.push_back(std::move(ex));
    }
    return d;
}

Topology random_topology(std::mt19937_64& rng, const Schema& schema, std::size_t max_bins) {
    Topology t;
    for (const auto& a : schema.attributes) t.bin_counts.push_back(a.discrete() ? a.values.size() : uniform(rng, 1, max_bins));
    return t;
}

std::vector<double> random_query(std::mt19937_64& rng, const Dataset& data) {
    std::vector<double> q;
    for (std::size_t m = 0; m < data.schema.attribute_count(); ++m) {
        const auto& a = data.schema.attributes[m];
        if (a.discrete()) {
            q.push_back(static_cast<double>(uniform(rng, 0, a.values.size() - 1)));
            continue;
        }
        double lo = data.examples[0].values[m], hi = lo;
        for (const auto& ex : data.examples) {
            lo = std::min(lo, ex.values[m]);
            hi = std::max(hi, ex.values[m]);
        }
        const double pad = 0.25 * (hi - lo) + 1.0;
        q.push_back(std::uniform_real_distribution<double>(lo - pad, hi + pad)(rng));
    }
    return q;
}

Dataset xor_dataset() {
    Dataset d;
    d.schema.attributes = {{"a", AttributeKind::continuous, {}}, {"b", AttributeKind::continuous, {}}};
    d.schema.classes = {"0", "1"};
    const double table[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (std::size_t i = 0; i < 4; ++i)
        d.examples.push_back(Example{{table[i][0], table[i][1]}, static_cast<std::size_t>(table[i][2]), i});
    return d;
}

std::size_t oracle_bin(const Dataset& data, const Topology& topology, std::size_t m, double value) {
    const auto& a = data.schema.attributes[m];
    if (a.discrete()) return static_cast<std::size_t>(value);
    auto lo = static_cast<long long>(data.examples[0].values[m]);
    auto hi = lo;
    for (const auto& ex : data.examples) {
        lo = std::min(lo, static_cast<long long>(ex.values[m]));
        hi = std::max(hi, static_cast<long long>(ex.values[m]));
    }
    // A zero-width grid has every center at the same point; everything lands in bin 0.
    if (hi == lo) return 0;
    const auto count = static_cast<long long>(topology.bin_counts[m]);
    const auto v = static_cast<long long>(value);
    // |v - center_b| scaled by 2 * count: |2 count (v - lo) - (2b + 1)(hi - lo)|.
    std::size_t best = 0;
    long long best_dist = -1;
    for (long long b = 0; b < count; ++b) {
        const long long dist = std::llabs(2 * count * (v - lo) - (2 * b + 1) * (hi - lo));
        if (best_dist < 0 || dist <= best_dist) {
            best = static_cast<std::size_t>(b);
            best_dist = dist;
        }
    }
    return best;
}

Oracle brute_force_fit(const Dataset& data, const Topology& topology) {
    const auto k_count = data.schema.class_count();
    const auto m_count = data.schema.attribute_count();
    Oracle o;
    o.bins = topology.bin_counts;
    o.cells.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        o.cells[k].resize(m_count);
        for (std::size_t l = 0; l < m_count; ++l) {
            o.cells[k][l].resize(topology.bin_counts[l]);
            for (std::size_t b = 0; b < topology.bin_counts[l]; ++b) {
                auto& cell = o.cells[k][l][b];
                for (const auto& ex : data.examples) {
                    if (ex.label != k || oracle_bin(data, topology, l, ex.values[l]) != b) continue;
                    if (cell.count++ == 0)
                        for (double v : ex.values) cell.tag.push_back({v, v});
                    for (std::size_t j = 0; j < m_count; ++j) {
                        cell.tag[j].min = std::min(cell.tag[j].min, ex.values[j]);
                        cell.tag[j].max = std::max(cell.tag[j].max, ex.values[j]);
                    }
                }
                cell.probability = static_cast<double>(cell.count) / static_cast<double>(data.size());
            }
        }
    }
    return o;
}

std::string compare_with_oracle(const Density& density, const Oracle& oracle) {
    for (std::size_t k = 0; k < oracle.cells.size(); ++k)
        for (std::size_t l = 0; l < oracle.cells[k].size(); ++l) {
            if (density.layout().bins(l) != oracle.bins[l]) return fmt::format("attribute {}: bin count differs", l);
            for (std::size_t b = 0; b < oracle.cells[k][l].size(); ++b) {
                const auto& want = oracle.cells[k][l][b];
                const auto where = fmt::format("cell ({}, {}, {})", k, l, b);
                if (density.joint.count(k, l, b) != want.count)
                    return fmt::format("{}: count {} != oracle {}", where, density.joint.count(k, l, b), want.count);
                if (density.joint.probability(k, l, b) != want.probability)
                    return fmt::format("{}: probability {} != oracle {}", where, density.joint.probability(k, l, b),
                                       want.probability);
                const auto tag = density.tags.tag(k, l, b);
                if (tag.size() != want.tag.size()) return where + ": tag population differs";
                for (std::size_t j = 0; j < tag.size(); ++j)
                    if (!(tag[j] == want.tag[j]))
                        return fmt::format("{}: tag slot {} [{}, {}] != oracle [{}, {}]", where, j, tag[j].min,
                                           tag[j].max, want.tag[j].min, want.tag[j].max);
            }
        }
    return {};
}

}  // namespace testkit
