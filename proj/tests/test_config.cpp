#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "epkit/config.hpp"
#include "epkit/model.hpp"

using namespace epkit;

TEST_CASE("basic parsing: values, comments, dotted keys") {
    auto cfg = key_value_config::parse(
        "# sweep setup\n"
        "family = open\n"
        "e1.intercept = 1.0   # caption values\n"
        "e1.slope = -0.5\n"
        "\n"
        "coupling = 0+0.05i\n");
    CHECK(cfg.has("family"));
    CHECK(cfg.get_string("family") == "open");
    CHECK(cfg.get_real("e1.intercept") == 1.0);
    CHECK(cfg.get_real("e1.slope") == -0.5);
    CHECK(cfg.get_complex("coupling") == complex_t(0.0, 0.05));
    CHECK_FALSE(cfg.has("e2.slope"));
    CHECK(cfg.entries().at("coupling").line == 6);
}

TEST_CASE("duplicate keys are rejected with both line numbers") {
    try {
        key_value_config::parse("a = 1\nb = 2\na = 3\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("malformed lines carry their line number") {
    try {
        key_value_config::parse("a = 1\nnot a pair\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
    }

    CHECK_THROWS_AS(key_value_config::parse("= 1\n"), config_error);
    CHECK_THROWS_AS(key_value_config::parse("a = \n"), config_error);
    CHECK_THROWS_AS(key_value_config::parse("a..b = 1\n"), config_error);
    CHECK_THROWS_AS(key_value_config::parse(".a = 1\n"), config_error);
    CHECK_THROWS_AS(key_value_config::parse("a. = 1\n"), config_error);
    CHECK_THROWS_AS(key_value_config::parse("bad key = 1\n"), config_error);
}

TEST_CASE("typed getters: errors name the key and line") {
    auto cfg = key_value_config::parse("x = hello\nn = 2.5\n");
    try {
        (void)cfg.get_real("x");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 1);
        CHECK(std::string(e.what()).find("x") != std::string::npos);
    }
    CHECK_THROWS_AS((void)cfg.get_int("n"), config_error);
    CHECK_THROWS_AS((void)cfg.get_real("missing"), config_error);

    CHECK(cfg.get_string_or("missing", "fb") == "fb");
    CHECK(cfg.get_real_or("missing", 1.5) == 1.5);
    CHECK(cfg.get_int_or("missing", 7) == 7);
    CHECK(cfg.get_real_or("n", 0.0) == 2.5);
}

TEST_CASE("unknown keys are rejected with the offending line") {
    auto cfg = key_value_config::parse("family = open\ntypo = 1\n");
    try {
        cfg.restrict_keys({"family"});
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("typo") != std::string::npos);
    }
    CHECK_NOTHROW(cfg.restrict_keys({"family", "typo"}));
}

TEST_CASE("complex literals: every documented form") {
    CHECK(parse_complex_literal("1.5") == complex_t(1.5, 0.0));
    CHECK(parse_complex_literal("-2") == complex_t(-2.0, 0.0));
    CHECK(parse_complex_literal("i") == complex_t(0.0, 1.0));
    CHECK(parse_complex_literal("-i") == complex_t(0.0, -1.0));
    CHECK(parse_complex_literal("+i") == complex_t(0.0, 1.0));
    CHECK(parse_complex_literal("0.05i") == complex_t(0.0, 0.05));
    CHECK(parse_complex_literal("-2e-3i") == complex_t(0.0, -2e-3));
    CHECK(parse_complex_literal("0+0.05i") == complex_t(0.0, 0.05));
    CHECK(parse_complex_literal("1.5-2i") == complex_t(1.5, -2.0));
    CHECK(parse_complex_literal("0.5+i") == complex_t(0.5, 1.0));
    CHECK(parse_complex_literal("0.5-i") == complex_t(0.5, -1.0));
    CHECK(parse_complex_literal("1e2+3e-1i") == complex_t(100.0, 0.3));

    CHECK_THROWS_AS((void)parse_complex_literal(""), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("banana"), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("1+2j"), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("1 + 2i"), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("inf"), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("nan"), config_error);
    CHECK_THROWS_AS((void)parse_complex_literal("1+infi"), config_error);
}

TEST_CASE("trajectory from config: open family") {
    auto cfg = key_value_config::parse(
        "family = open\n"
        "e1.intercept = 1\n"
        "e1.slope = -0.5\n"
        "e2.slope = 1\n"
        "gamma1.intercept = 1\n"
        "gamma2.intercept = 1\n"
        "coupling = 0+0.05i\n"
        "range.min = 0\n"
        "range.max = 1.2\n");
    param_trajectory traj = trajectory_from_config(cfg);
    CHECK(traj.kind == family_kind::open);
    CHECK(traj.default_a_min == 0.0);
    CHECK(traj.default_a_max == 1.2);
    CHECK(traj.base_coupling == complex_t(0.0, 0.05));
    CHECK(traj.coupling == coupling_model::constant);

    family_params p = params_at(traj, 1.0);
    const auto& o = std::get<open_params>(p);
    CHECK(o.e1 == 0.5);
    CHECK(o.e2 == 1.0);
    CHECK(o.gamma1 == 1.0);
}

TEST_CASE("trajectory from config: balanced family and coupling falloff") {
    auto cfg = key_value_config::parse(
        "family = pt-balanced\n"
        "e.intercept = 0.5\n"
        "gamma.slope = 0.05\n"
        "coupling = 0.05\n");
    param_trajectory traj = trajectory_from_config(cfg);
    CHECK(traj.kind == family_kind::pt_balanced);

    family_params p = params_at(traj, 2.0);
    const auto& q = std::get<pt_params>(p);
    CHECK(q.e == 0.5);
    CHECK(q.gamma == 0.1);
    CHECK(q.variant == pt_variant::balanced_gain_loss);

    auto cfg2 = key_value_config::parse(
        "family = open\n"
        "e1.intercept = 0.5\n"
        "coupling = 0.05\n"
        "coupling.model = gaussian-falloff\n");
    param_trajectory traj2 = trajectory_from_config(cfg2);
    CHECK(traj2.coupling == coupling_model::gaussian_falloff);
}

TEST_CASE("trajectory from config: rejections") {
    CHECK_THROWS_AS((void)trajectory_from_config(
                        key_value_config::parse("family = hermitian\n")),
                    config_error);
    CHECK_THROWS_AS((void)trajectory_from_config(key_value_config::parse("")),
                    config_error);
    CHECK_THROWS_AS(
        (void)trajectory_from_config(key_value_config::parse(
            "family = open\ncoupling = 0.05\ncoupling.model = quadratic\n")),
        config_error);
    CHECK_THROWS_AS(
        (void)trajectory_from_config(key_value_config::parse(
            "family = open\ncoupling = 0.05\nrange.min = 2\nrange.max = 1\n")),
        config_error);
}

TEST_CASE("missing file reports the path") {
    try {
        key_value_config::parse_file("/nonexistent/epkit.conf");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("epkit.conf") != std::string::npos);
    }
}
