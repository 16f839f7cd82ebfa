#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "tgen/errors.hpp"
#include "tgen/signal.hpp"

using namespace tgen;

namespace {

InputSpec numeric_spec(const std::string& name, double lo, double hi, int cp) {
    InputSpec s;
    s.name = name;
    s.lo = lo;
    s.hi = hi;
    s.control_points = cp;
    return s;
}

}  // namespace

TEST_CASE("sample_test_case draws inside ranges" * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("a", -100, 100, 5),
                                    numeric_spec("b", -100, 100, 5),
                                    numeric_spec("c", -100, 100, 5)};
    Rng rng(7);
    const TestCase tc = sample_test_case(specs, rng);
    REQUIRE(tc.points.size() == 3);
    for (const auto& pts : tc.points) {
        CHECK(pts.size() == 5);
        for (double v : pts) {
            CHECK(v >= -100.0);
            CHECK(v <= 100.0);
        }
    }
}

TEST_CASE("sample_test_case degenerate range" * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("a", 5, 5, 3)};
    Rng rng(1);
    const TestCase tc = sample_test_case(specs, rng);
    for (double v : tc.points[0]) CHECK(v == 5.0);
}

TEST_CASE("sample_test_case deterministic per seed" * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("a", -3, 9, 4),
                                    numeric_spec("b", 0, 1, 2)};
    Rng r1(42), r2(42);
    CHECK(sample_test_case(specs, r1).points == sample_test_case(specs, r2).points);
}

TEST_CASE("sample_test_case rejects empty spec list" * doctest::test_suite("signal")) {
    Rng rng(0);
    std::vector<InputSpec> none;
    CHECK_THROWS_AS(sample_test_case(none, rng), ConfigError);
}

TEST_CASE("sample_test_case stays in range over many draws"
          * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("a", -20, 60, 1)};
    Rng rng(99);
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double v = sample_test_case(specs, rng).points[0][0];
        REQUIRE(v >= -20.0);
        REQUIRE(v <= 60.0);
        sum += v;
    }
    // mean within 5% of the midpoint, measured against the range width
    const double mean = sum / n;
    CHECK(std::abs(mean - 20.0) < 0.05 * 80.0);
}

TEST_CASE("render_signal hold rule" * doctest::test_suite("signal")) {
    const InputSpec spec = numeric_spec("a", 0, 10, 2);
    const Signal sig = render_signal({1, 3}, spec, 10, 1);
    CHECK(sig.values == std::vector<double>{1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3});
}

TEST_CASE("render_signal five points land at 0,2,4,6,8"
          * doctest::test_suite("signal")) {
    const InputSpec spec = numeric_spec("a", 0, 50, 5);
    const Signal sig = render_signal({10, 20, 30, 40, 50}, spec, 10, 1);
    CHECK(sig.values ==
          std::vector<double>{10, 10, 20, 20, 30, 30, 40, 40, 50, 50, 50});
}

TEST_CASE("render_signal constant interpolation" * doctest::test_suite("signal")) {
    InputSpec spec = numeric_spec("a", 0, 10, 1);
    spec.interpolation = Interpolation::constant;
    const Signal sig = render_signal({7}, spec, 4, 1);
    CHECK(sig.values == std::vector<double>{7, 7, 7, 7, 7});
}

TEST_CASE("render_signal equal control points" * doctest::test_suite("signal")) {
    const InputSpec spec = numeric_spec("a", 0, 10, 3);
    const Signal sig = render_signal({2, 2, 2}, spec, 6, 0.5);
    for (double v : sig.values) CHECK(v == 2.0);
}

TEST_CASE("render_signal length and membership invariants"
          * doctest::test_suite("signal")) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int cp = 1 + static_cast<int>(rng.index(6));
        const InputSpec spec = numeric_spec("a", -5, 5, cp);
        std::vector<double> vals(static_cast<std::size_t>(cp));
        for (double& v : vals) v = rng.uniform(-5, 5);
        const int steps = 2 + static_cast<int>(rng.index(40));
        const double dt = 0.25;
        const Signal sig = render_signal(vals, spec, steps * dt, dt);
        REQUIRE(static_cast<int>(sig.values.size()) ==
                static_cast<int>(std::round(sig.duration / sig.dt)) + 1);
        for (double v : sig.values) {
            // the hold never interpolates a value that is not a control point
            CHECK(std::find(vals.begin(), vals.end(), v) != vals.end());
        }
    }
}

TEST_CASE("render_signal rejects non-integral horizons"
          * doctest::test_suite("signal")) {
    const InputSpec spec = numeric_spec("a", 0, 10, 2);
    CHECK_THROWS_AS(render_signal({0, 1}, spec, 10, 0.3), ConfigError);
    CHECK_THROWS_AS(render_signal({0}, spec, 10, 1), ConfigError);  // wrong length
}

TEST_CASE("booleanize thresholds" * doctest::test_suite("signal")) {
    CHECK(booleanize(0.49) == 0.0);
    CHECK(booleanize(0.5) == 1.0);
    CHECK(booleanize(0.0) == 0.0);
    CHECK(booleanize(1.0) == 1.0);
    CHECK(booleanize(-0.2) == 0.0);  // clamped
    CHECK(booleanize(1.7) == 1.0);   // clamped
}

TEST_CASE("test case JSON round trip" * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("x", -1, 1, 3),
                                    numeric_spec("y", 0, 4, 1)};
    Rng rng(11);
    const TestCase tc = sample_test_case(specs, rng);
    const auto j = test_case_to_json(tc, specs);
    CHECK(j["inputs"][0]["name"] == "x");
    const TestCase back = test_case_from_json(j, specs);
    CHECK(back.points == tc.points);

    const TestSuite suite = {tc, sample_test_case(specs, rng)};
    const TestSuite suite_back = suite_from_json(suite_to_json(suite, specs), specs);
    REQUIRE(suite_back.size() == 2);
    CHECK(suite_back[1].points == suite[1].points);
}

TEST_CASE("test case JSON validation" * doctest::test_suite("signal")) {
    std::vector<InputSpec> specs = {numeric_spec("x", 0, 1, 2)};
    nlohmann::json bad_name = {{"inputs", {{{"name", "z"}, {"points", {0.1, 0.2}}}}}};
    CHECK_THROWS_AS(test_case_from_json(bad_name, specs), ConfigError);
    nlohmann::json bad_range = {{"inputs", {{{"name", "x"}, {"points", {0.1, 2.0}}}}}};
    CHECK_THROWS_AS(test_case_from_json(bad_range, specs), ConfigError);
    nlohmann::json bad_len = {{"inputs", {{{"name", "x"}, {"points", {0.1}}}}}};
    CHECK_THROWS_AS(test_case_from_json(bad_len, specs), ConfigError);
}
