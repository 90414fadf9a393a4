#include <doctest.h>

#include "deflab/model_io.hpp"
#include "deflab/suite.hpp"

using namespace deflab;

TEST_CASE("model JSON round trip is bit-exact") {
    ModelFile mf;
    mf.model = fixture_m2();
    mf.processes["Z"] = optional_projection(mf.model.space, indicator_open(mf.model.space, mf.model.tau));
    std::string text = model_to_json(mf);
    ModelFile back = model_from_json(text);
    CHECK(back.model.space.prob == mf.model.space.prob);
    CHECK(back.model.space.partitions == mf.model.space.partitions);
    CHECK(back.model.tau.t == mf.model.tau.t);
    CHECK(proc_equal(back.processes.at("Z"), mf.processes.at("Z")));
    CHECK(model_to_json(back) == text);
}

TEST_CASE("corrupted models are rejected at load") {
    std::string bad = R"({"outcomes":["a","b"],"probs":["1/2","1/3"],"horizon":1,
        "filtration":[[[0,1]],[[0,1]]],"times":{"tau":[0,1]}})";
    try {
        (void)model_from_json(bad);
        FAIL("expected BadMeasure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadMeasure);
    }
    CHECK_THROWS_AS((void)model_from_json("{not json"), Error);
}

TEST_CASE("rational literals") {
    CHECK(rat_parse("2/4") == rat(1, 2));
    CHECK(rat_parse("-3") == rat(-3));
    CHECK(rat_str(rat(5, 10)) == "1/2");
    CHECK_THROWS_AS((void)rat_parse("x"), std::invalid_argument);
}

TEST_CASE("suite reports replay bit-exactly") {
    SuiteConfig cfg;
    cfg.suite = "azema";
    cfg.models = 6;
    cfg.seed = 99;
    SuiteReport r1 = run_suite(cfg);
    SuiteReport r2 = run_suite(cfg);
    CHECK(r1.all_passed());
    // Wall time varies; everything else must be identical.
    r1.wall_ms = r2.wall_ms = 0;
    CHECK(report_to_json(r1) == report_to_json(r2));
}

TEST_CASE("fixtures-only suites pass quickly across all groups") {
    for (const std::string& name : suite_names()) {
        SuiteConfig cfg;
        cfg.suite = name;
        cfg.fixtures_only = true;
        SuiteReport rep = run_suite(cfg);
        INFO(name);
        CHECK(rep.all_passed());
    }
}
