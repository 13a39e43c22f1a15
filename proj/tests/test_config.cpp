#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sot/config.hpp"
#include "sot/errors.hpp"

using namespace sot;

namespace {

std::string write_cfg(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/" + name;
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("config file assigns dotted keys with comments and blanks") {
    const std::string path = write_cfg("sot_cfg_ok.cfg",
                                       "# reference run\n"
                                       "run.seed = 99\n"
                                       "\n"
                                       "device.alpha = 0.02   # damping\n"
                                       "pulse.i_clock = 70e-6\n"
                                       "integrator.renormalize = false\n"
                                       "eval.mode = deterministic\n"
                                       "sweep.write = -4e-6:2e-6:4e-6\n"
                                       "sweep.clock = 60e-6, 85e-6\n");
    ExperimentConfig cfg;
    parse_config_file(path, cfg);
    CHECK(cfg.seed == 99);
    CHECK(cfg.alpha == 0.02);
    CHECK(cfg.i_clock == 70e-6);
    CHECK_FALSE(cfg.renormalize);
    CHECK(cfg.eval_mode == "deterministic");
    const std::vector<double> expect{-4e-6, -2e-6, 0.0, 2e-6, 4e-6};
    REQUIRE(cfg.sweep_write.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(cfg.sweep_write[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(cfg.sweep_clock == std::vector<double>{60e-6, 85e-6});
}

TEST_CASE("config errors carry file and line") {
    ExperimentConfig cfg;

    const std::string unknown = write_cfg("sot_cfg_unknown.cfg", "run.seed = 1\ndevice.bogus = 2\n");
    try {
        parse_config_file(unknown, cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("sot_cfg_unknown.cfg:2") != std::string::npos);
        CHECK(msg.find("device.bogus") != std::string::npos);
    }

    const std::string badval = write_cfg("sot_cfg_badval.cfg", "device.alpha = fast\n");
    try {
        parse_config_file(badval, cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(":1") != std::string::npos);
    }

    const std::string noeq = write_cfg("sot_cfg_noeq.cfg", "run.seed 5\n");
    CHECK_THROWS_AS(parse_config_file(noeq, cfg), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/tmp/sot_cfg_missing.cfg", cfg), ConfigError);
}

TEST_CASE("cli assignments override file values") {
    ExperimentConfig cfg;
    const std::string path = write_cfg("sot_cfg_base.cfg", "device.temperature = 200\nrun.seed = 5\n");
    parse_config_file(path, cfg);
    apply_assignment(cfg, "device.temperature=350", "--set");
    CHECK(cfg.temperature == 350.0);
    CHECK(cfg.seed == 5);

    CHECK_THROWS_AS(apply_assignment(cfg, "device.temperature", "--set"), ConfigError);
    CHECK_THROWS_AS(apply_assignment(cfg, "nope=1", "--set"), ConfigError);
}

TEST_CASE("echo covers every registered key") {
    ExperimentConfig cfg;
    cfg.seed = 777;
    cfg.eval_mode = "full";
    const nlohmann::json echo = config_echo(cfg);
    const std::vector<std::string> keys = config_keys();
    CHECK(keys.size() > 40);
    for (const auto& k : keys) {
        INFO("key ", k);
        CHECK(echo.contains(k));
    }
    CHECK(echo.size() == keys.size());
    CHECK(echo.at("run.seed").get<std::uint64_t>() == 777);
    CHECK(echo.at("eval.mode") == "full");

    // Echoed values can be fed back verbatim.
    ExperimentConfig cfg2;
    for (auto it = echo.begin(); it != echo.end(); ++it) {
        std::string v;
        if (it.value().is_string()) v = it.value().get<std::string>();
        else v = it.value().dump();
        if (v.front() == '[') {  // list syntax uses commas without brackets
            v = v.substr(1, v.size() - 2);
            if (v.empty()) continue;
        }
        apply_assignment(cfg2, it.key() + "=" + v, "echo");
    }
    CHECK(config_echo(cfg2) == echo);
}

TEST_CASE("domain objects assemble from the config") {
    ExperimentConfig cfg;
    const DeviceParams dev = make_device(cfg);
    CHECK(dev.material.ku2 > 4e5);  // calibrated from barrier_kt
    CHECK(dev.geometry.semi_axis_a == 20e-9);
    CHECK(dev.hm.theta_sh == 0.3);

    cfg.ku2 = 5e5;
    const DeviceParams fixed = make_device(cfg);
    CHECK(fixed.material.ku2 == 5e5);

    const PulseSchedule pulse = make_pulse(cfg);
    CHECK(pulse.i_clock == 85e-6);
    CHECK(pulse.relax == 3e-9);

    const CrossbarParams xb = make_crossbar(cfg);
    CHECK(xb.levels == 32);
    const TrainConfig tc = make_train(cfg);
    CHECK(tc.hidden == 25);
    CHECK(tc.seed == 1);

    const std::vector<double> wa = write_axis(cfg);
    REQUIRE(wa.size() == 21);
    CHECK(wa.front() == doctest::Approx(-10e-6));
    CHECK(wa.back() == doctest::Approx(10e-6));
    CHECK(wa[10] == doctest::Approx(0.0).epsilon(1e-20));

    cfg.threads = 3;
    CHECK(resolve_threads(cfg) == 3);
    cfg.threads = 0;
    CHECK(resolve_threads(cfg) >= 1);
}

TEST_CASE("invalid physics in the config is rejected on assembly") {
    ExperimentConfig cfg;
    cfg.alpha = 1.5;
    CHECK_THROWS(make_device(cfg));
    cfg = ExperimentConfig{};
    cfg.barrier_kt = -3.0;
    CHECK_THROWS(make_device(cfg));
}
