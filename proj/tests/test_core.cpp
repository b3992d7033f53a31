#include "momentforge/core.hpp"

#include "test_rng.hpp"

#include <doctest.h>

using namespace momentforge;

TEST_CASE("iou on the pinned cases") {
    CHECK(iou({0, 10}, {0, 10}) == doctest::Approx(1.0));
    CHECK(iou({0, 10}, {20, 30}) == doctest::Approx(0.0));
    // intersection 5, union 15
    CHECK(iou({0, 10}, {5, 15}) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("iou zero-length conventions") {
    CHECK(iou({5, 5}, {5, 5}) == 1.0);
    CHECK(iou({5, 5}, {6, 6}) == 0.0);
    CHECK(iou({5, 5}, {0, 10}) == 0.0);
    CHECK(iou({0, 10}, {5, 5}) == 0.0);
}

TEST_CASE("iou symmetry, bounds, and identity over random pairs") {
    TestRng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const double a0 = rng.uniform(0, 100);
        const double b0 = rng.uniform(0, 100);
        const TemporalInterval a{a0, a0 + rng.uniform(0, 50)};
        const TemporalInterval b{b0, b0 + rng.uniform(0, 50)};
        const double ab = iou(a, b);
        const double ba = iou(b, a);
        CHECK(ab == ba);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        if (a.length() > 0.0) CHECK(iou(a, a) == doctest::Approx(1.0));
        // 1 only for identical intervals
        if (ab == 1.0) CHECK(a == b);
    }
}

TEST_CASE("iou never increases as b shifts away from a") {
    TestRng rng(43);
    for (int i = 0; i < 500; ++i) {
        const double a0 = rng.uniform(0, 100);
        const TemporalInterval a{a0, a0 + rng.uniform(1, 40)};
        const double b0 = rng.uniform(a0, a0 + 40);
        const double blen = rng.uniform(1, 40);
        double prev = iou(a, {b0, b0 + blen});
        double shift = 0.0;
        for (int s = 1; s <= 5; ++s) {
            shift += rng.uniform(0.5, 5.0);
            const double cur = iou(a, {b0 + shift, b0 + shift + blen});
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("clamp") {
    CHECK(clamp({-5, 10}, {0, 100}) == TemporalInterval{0, 10});
    CHECK(clamp({30, 40}, {0, 100}) == TemporalInterval{30, 40});
    CHECK(clamp({120, 130}, {0, 100}) == TemporalInterval{100, 100});
    CHECK(clamp({-10, -5}, {0, 100}) == TemporalInterval{0, 0});

    TestRng rng(47);
    for (int i = 0; i < 500; ++i) {
        const double s = rng.uniform(-50, 150);
        const TemporalInterval a{s, s + rng.uniform(0, 80)};
        const TemporalInterval bounds{0, 100};
        const TemporalInterval c = clamp(a, bounds);
        CHECK(c.valid());
        CHECK(c.start >= bounds.start);
        CHECK(c.end <= bounds.end);
    }
}
