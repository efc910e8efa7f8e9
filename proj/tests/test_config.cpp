#include <doctest.h>

#include <string>

#include "croppest/config.hpp"
#include "croppest/errors.hpp"

using namespace croppest;

TEST_SUITE("config") {

TEST_CASE("command defaults") {
    const auto sim = RunConfig::defaults_for(Command::Simulate);
    CHECK(sim.tf == 2000.0);
    CHECK(sim.dt == 0.05);
    CHECK(sim.params == ModelParams{});
    CHECK(sim.initial == State{0.2, 0.07, 0.05, 0.5});
    const auto opt = RunConfig::defaults_for(Command::Optimize);
    CHECK(opt.tf == 100.0);
    CHECK(opt.dt == 0.01);
    CHECK(opt.weights == ObjectiveWeights{1015, 1010, 1.6, 1});
}

TEST_CASE("parsing key = value lines") {
    RunConfig cfg;
    cfg.apply_text("# comment\n\n  alpha = 0.06   # inline\nphi=0.5\r\nX0 = 0.3\nB1 = 2\ntf = 10\n");
    CHECK(cfg.params.alpha == 0.06);
    CHECK(cfg.params.phi == 0.5);
    CHECK(cfg.initial.X == 0.3);
    CHECK(cfg.weights.B1 == 2.0);
    CHECK(cfg.tf == 10.0);
}

TEST_CASE("parse errors name the line") {
    RunConfig cfg;
    try {
        cfg.apply_text("alpha = 0.1\nbeta = 2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("beta") != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(cfg.apply_text("alpha 0.1\n"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_text("alpha = 0.1x\n"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_text("alpha = \n"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_text("alpha = nan\n"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("alpha"), ConfigError);
}

TEST_CASE("overrides") {
    RunConfig cfg;
    cfg.apply_override("lambda=0.04");
    cfg.apply_override(" dt = 0.01 ");
    CHECK(cfg.params.lambda == 0.04);
    CHECK(cfg.dt == 0.01);
}

TEST_CASE("every key round-trips through text") {
    RunConfig cfg = RunConfig::defaults_for(Command::Optimize);
    double v = 0.1;
    for (auto key : config_keys()) {
        cfg.set(key, cfg.get(key) + v);
        v = v * 1.37 + 1e-17;
    }
    cfg.set("alpha", 0.1 + 0.2);
    cfg.set("gamma", 1e-300);
    RunConfig back = RunConfig::defaults_for(Command::Simulate);
    back.apply_text(cfg.to_text());
    CHECK(back == cfg);
}

TEST_CASE("validation maps to ConfigError") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.params.phi = 1.2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.dt = 0.3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.initial.S = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.weights.B2 = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(cfg.set("Z0", 1.0), ConfigError);
}

}
