#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpolar/error.hpp"
#include "wpolar/verify.hpp"

using namespace wpolar;

TEST_CASE("pt suite at the documented settings") {
    verify::Options opt;
    opt.suite = "pt";
    opt.seed = 7;
    opt.trials = 200;
    opt.dims = {2, 4, 8};
    const verify::Report r = verify::run(opt);
    CHECK(r.passes == 200);
    CHECK(r.failures.empty());
    CHECK(r.max_residual <= 1e-9);
}

TEST_CASE("all aggregates every suite") {
    verify::Options opt;
    opt.trials = 3;
    const verify::Report r = verify::run(opt);
    CHECK(r.parts.size() == verify::suite_names().size());
    int passes = 0;
    for (const auto& p : r.parts) {
        CHECK(p.trials == 3);
        CHECK(p.passes + static_cast<int>(p.failures.size()) == p.trials);
        passes += p.passes;
    }
    CHECK(r.passes == passes);
    CHECK(r.experiments.count("weighted_polar_vs_alpha_route_gap") == 1);
}

TEST_CASE("unknown suites are rejected") {
    CHECK_FALSE(verify::is_known_suite("nope"));
    CHECK(verify::is_known_suite("all"));
    verify::Options opt;
    opt.suite = "nope";
    CHECK_THROWS_AS(verify::run(opt), Error);
    opt.suite = "core";
    opt.dims = {};
    CHECK_THROWS_AS(verify::run(opt), Error);
}

TEST_CASE("reports are deterministic apart from timing") {
    verify::Options opt;
    opt.seed = 42;
    opt.trials = 4;
    const auto a = verify::to_json(verify::run(opt), false).dump();
    const auto b = verify::to_json(verify::run(opt), false).dump();
    CHECK(a == b);
    opt.seed = 43;
    CHECK(verify::to_json(verify::run(opt), false).dump() != a);
    auto timed = verify::to_json(verify::run(opt));
    CHECK(timed.contains("elapsed_ms"));
}

TEST_CASE("zero trials pass vacuously") {
    verify::Options opt;
    opt.suite = "core";
    opt.trials = 0;
    const verify::Report r = verify::run(opt);
    CHECK(r.passes == 0);
    CHECK(r.failures.empty());
}
