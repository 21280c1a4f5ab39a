#include "dbnb/density.hpp"
#include "dbnb/error.hpp"

#include "properties.hpp"
#include "testkit.hpp"

#include <doctest.h>

using namespace dbnb;

TEST_CASE("bin index on a 7-bin grid over [1, 10]") {
    const BinSpec spec{1.0, 10.0, 7};
    CHECK(bin_index(spec, 5.5) == 3);
    CHECK(bin_index(spec, 1.0) == 0);
    CHECK(bin_index(spec, 10.0) == 6);
    CHECK(bin_index(spec, 12.0) == 6);
    CHECK(bin_index(spec, -3.0) == 0);
}

TEST_CASE("values on a shared edge go to the upper bin") {
    const BinSpec spec{0.0, 4.0, 4};
    CHECK(bin_index(spec, 1.0) == 1);
    CHECK(bin_index(spec, 3.0) == 3);
    CHECK(bin_index(spec, 0.999) == 0);
}

TEST_CASE("degenerate grids put everything in bin 0") {
    const std::vector<double> same{2.0, 2.0, 2.0};
    const auto spec = make_bin_spec(same, 5);
    CHECK(spec.min == 2.0);
    CHECK(spec.max == 2.0);
    CHECK(bin_index(spec, 2.0) == 0);
    CHECK(bin_index(spec, 9.0) == 0);
    CHECK(bin_index(BinSpec{0.0, 1.0, 1}, 0.7) == 0);
}

TEST_CASE("topology strings") {
    CHECK(parse_topology("8,5,5").bin_counts == std::vector<std::size_t>{8, 5, 5});
    CHECK(parse_topology("8-5-14").bin_counts == std::vector<std::size_t>{8, 5, 14});
    CHECK(to_string(parse_topology("8,5,5,5,14,30,5,6")) == "8-5-5-5-14-30-5-6");
    CHECK_THROWS(parse_topology(""));
    CHECK_THROWS(parse_topology("3,x"));
}

TEST_CASE("topology must fit the schema") {
    Schema s;
    s.attributes = {{"a", AttributeKind::continuous, {}}, {"b", AttributeKind::binary, {"0", "1"}}};
    s.classes = {"x", "y"};
    CHECK(expand_topology(Topology{{9}}, s).bin_counts == std::vector<std::size_t>{9, 2});
    CHECK_NOTHROW(validate_topology(Topology{{3, 2}}, s));
    CHECK_THROWS_AS(validate_topology(Topology{{3, 3}}, s), ArgumentError);
    CHECK_THROWS_AS(validate_topology(Topology{{0, 2}}, s), ArgumentError);
    CHECK_THROWS_AS(validate_topology(Topology{{3}}, s), ArgumentError);
}

TEST_CASE("XOR fixture: joint probabilities and tags") {
    const auto data = testkit::xor_dataset();
    const auto d = fit_density(data, Topology{{2, 2}});
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t b = 0; b < 2; ++b) {
                CHECK(d.joint.count(k, m, b) == 1);
                CHECK(d.joint.probability(k, m, b) == 0.25);
            }
    // Class 0 with a = 1 holds only (1, 1): the tag pins b to [1, 1].
    const auto tag = d.tags.tag(0, 0, 1);
    REQUIRE(tag.size() == 2);
    CHECK(tag[1] == ValueRange{1.0, 1.0});
    CHECK(tag[0] == ValueRange{1.0, 1.0});
}

TEST_CASE("tagged likelihood gates once per violated tag") {
    const auto data = testkit::xor_dataset();
    const auto d = fit_density(data, Topology{{2, 2}});
    const GateParams gate{0.25, 1.0 / 40.0};
    const std::vector<double> x{0.0, 1.0};
    // Class 1 saw (0, 1): no violation. Class 0 with a = 0 saw only b = 0: violated.
    CHECK(tagged_likelihood(d, x, 1, 0, gate) == 0.25);
    CHECK(tagged_likelihood(d, x, 0, 0, gate) == 0.0625);
    CHECK(tagged_likelihood(d, x, 0, 1, gate) == 0.0625);
    CHECK(tagged_likelihood(d, x, 0, 0, GateParams{1.0, 1.0 / 40.0}) == 0.25);
}

TEST_CASE("empty cells fall back to epsilon and count as violated") {
    Dataset data = testkit::xor_dataset();
    data.examples.pop_back();  // drop (1, 1, class 0)
    const auto d = fit_density(data, Topology{{2, 2}});
    CHECK(d.joint.count(0, 0, 1) == 0);
    CHECK_FALSE(d.tags.populated(0, 0, 1));
    CHECK(tag_violated(d, std::vector<double>{1.0, 0.0}, std::vector<std::size_t>{1, 0}, 0, 0));
    const GateParams gate{0.25, 1.0 / 30.0};
    CHECK(tagged_likelihood(d, std::vector<double>{1.0, 0.0}, 0, 0, gate) == doctest::Approx(0.25 / 30.0));
}

TEST_CASE("single-attribute tags never gate") {
    Dataset data;
    data.schema.attributes = {{"a", AttributeKind::continuous, {}}};
    data.schema.classes = {"p", "q"};
    data.examples = {{{0.0}, 0, 0}, {{1.0}, 1, 1}};
    const auto d = fit_density(data, Topology{{2}});
    CHECK_FALSE(tag_violated(d, std::vector<double>{0.0}, std::vector<std::size_t>{0}, 1, 0));
}

TEST_CASE("discrete attributes bin by declared value") {
    Dataset data;
    data.schema.attributes = {{"c", AttributeKind::categorical, {"r", "g", "b", "w"}}};
    data.schema.classes = {"p", "q"};
    data.examples = {{{1.0}, 0, 0}, {{2.0}, 1, 1}};
    const auto d = fit_density(data, Topology{{4}});
    CHECK(d.bins[0] == BinSpec{0.0, 3.0, 4});
    for (std::size_t v = 0; v < 4; ++v) CHECK(bin_index(d.bins[0], static_cast<double>(v)) == v);
    CHECK(d.joint.count(0, 0, 1) == 1);
    CHECK(d.joint.count(1, 0, 2) == 1);
}

TEST_CASE("fitting an empty set is an error") {
    Dataset data = testkit::xor_dataset();
    data.examples.clear();
    CHECK_THROWS_AS(fit_density(data, Topology{{2, 2}}), ArgumentError);
}

TEST_CASE("fitted density matches the brute-force oracle") {
    const auto r = testkit::oracle_equivalence(7, 300);
    INFO(r.first_failure);
    CHECK(r.passed());
}
