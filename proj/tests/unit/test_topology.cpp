#include "dbnb/boosting.hpp"
#include "dbnb/error.hpp"
#include "dbnb/evaluation.hpp"
#include "dbnb/topology.hpp"

#include "testkit.hpp"

#include <doctest.h>
#include <random>

using namespace dbnb;

namespace {

/// Two noisy continuous inputs and a binary one, 60 examples.
std::pair<Dataset, Dataset> noisy_split() {
    Dataset d;
    d.schema.attributes = {{"u", AttributeKind::continuous, {}},
                           {"v", AttributeKind::continuous, {}},
                           {"flag", AttributeKind::binary, {"0", "1"}}};
    d.schema.classes = {"a", "b"};
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < 60; ++i) {
        const std::size_t label = i % 2;
        d.examples.push_back(Example{{noise(rng) + 1.5 * static_cast<double>(label), noise(rng) * 3.0,
                                      static_cast<double>((i / 2) % 2)},
                                     label, i});
    }
    return split_dataset(d, 40);
}

}  // namespace

TEST_CASE("baseline uses 5 bins for continuous and value counts for discrete attributes") {
    const auto [train, validation] = noisy_split();
    const auto spec = make_search_spec(train.schema, 2, 8);
    CHECK(baseline_topology(train.schema, spec).bin_counts == std::vector<std::size_t>{5, 5, 2});
    SearchSpec narrow = spec;
    narrow.candidates[0] = {3, 4};
    CHECK(baseline_topology(train.schema, narrow).bin_counts == std::vector<std::size_t>{3, 5, 2});
}

TEST_CASE("budget 1 returns the baseline and flags truncation") {
    const auto [train, validation] = noisy_split();
    auto spec = make_search_spec(train.schema, 2, 8);
    spec.budget = 1;
    const auto r = coordinate_search(train, validation, spec, TrainConfig{});
    CHECK(r.truncated);
    REQUIRE(r.trials.size() == 1);
    CHECK(r.best.bin_counts == std::vector<std::size_t>{5, 5, 2});
}

TEST_CASE("a single candidate per attribute needs one trial") {
    const auto [train, validation] = noisy_split();
    const auto spec = make_search_spec(train.schema, 4, 4);
    const auto r = coordinate_search(train, validation, spec, TrainConfig{});
    CHECK_FALSE(r.truncated);
    REQUIRE(r.trials.size() == 1);
    CHECK(r.best.bin_counts == std::vector<std::size_t>{4, 4, 2});
    CHECK(r.best_accuracy == r.trials[0].validation_accuracy);
}

TEST_CASE("search result is reproducible and independent of parallelism") {
    const auto [train, validation] = noisy_split();
    auto spec = make_search_spec(train.schema, 2, 9);
    TrainConfig base;
    base.max_rounds = 40;
    const auto serial = coordinate_search(train, validation, spec, base);
    spec.parallelism = 4;
    const auto parallel = coordinate_search(train, validation, spec, base);
    REQUIRE(serial.trials.size() == parallel.trials.size());
    for (std::size_t i = 0; i < serial.trials.size(); ++i) {
        CHECK(serial.trials[i].topology == parallel.trials[i].topology);
        CHECK(serial.trials[i].validation_accuracy == parallel.trials[i].validation_accuracy);
    }
    CHECK(serial.best == parallel.best);
    CHECK(serial.trials.size() <= spec.budget);

    double top = 0.0;
    for (const auto& t : serial.trials) top = std::max(top, t.validation_accuracy);
    CHECK(serial.best_accuracy == top);

    TrainConfig again = base;
    again.topology = serial.best;
    const auto retrained = dbnb::train(train, again);
    CHECK(evaluate(retrained, validation).accuracy() == serial.best_accuracy);
}

TEST_CASE("exhaustive search covers the grid") {
    const auto [train, validation] = noisy_split();
    auto spec = make_search_spec(train.schema, 2, 4);
    spec.exhaustive = true;
    const auto r = coordinate_search(train, validation, spec, TrainConfig{});
    CHECK(r.trials.size() == 9);
    CHECK_FALSE(r.truncated);
    spec.budget = 5;
    const auto cut = coordinate_search(train, validation, spec, TrainConfig{});
    CHECK(cut.trials.size() == 5);
    CHECK(cut.truncated);
}

TEST_CASE("search spec validation") {
    const auto [train, validation] = noisy_split();
    auto spec = make_search_spec(train.schema, 2, 4);
    spec.candidates[2] = {3};
    CHECK_THROWS_AS(spec.validate(train.schema), ArgumentError);
    spec = make_search_spec(train.schema, 2, 4);
    spec.candidates[0].clear();
    CHECK_THROWS_AS(spec.validate(train.schema), ArgumentError);
    spec = make_search_spec(train.schema, 2, 4);
    spec.budget = 0;
    CHECK_THROWS_AS(spec.validate(train.schema), ArgumentError);
    spec = make_search_spec(train.schema, 2, 4);
    spec.candidates.pop_back();
    CHECK_THROWS_AS(coordinate_search(train, validation, spec, TrainConfig{}), ArgumentError);
    CHECK_THROWS_AS(make_search_spec(train.schema, 0, 3), ArgumentError);
}
