#include "properties.hpp"

#include <doctest.h>

// Smaller runs than the acceptance gate; enough to catch regressions quickly.
TEST_CASE("invariant properties hold on random instances") {
    std::uint64_t seed = 100;
    for (const auto& p : testkit::invariant_properties()) {
        const auto r = p.run(seed++, 150);
        INFO(p.name << ": " << r.first_failure);
        CHECK(r.passed());
    }
}
