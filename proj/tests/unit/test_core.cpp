#include <doctest.h>

#include <cmath>

#include "purcell/core/config.hpp"
#include "purcell/core/params.hpp"

using namespace purcell::core;

namespace {

Params cavity_params(double g, double kappa, double delta, double eta) {
    Params p;
    p.g = g;
    p.kappa = kappa;
    p.delta_a = delta;
    p.delta_c = delta;
    p.eta = eta;
    p.omega_rec = 1.0;
    return p;
}

}  // namespace

TEST_CASE("effective drive of the driven cavity") {
    const cx om = cavity_drive(155.0, 132.0, 1000.0, 200.0);
    CHECK(std::abs(om) == doctest::Approx(20.0617).epsilon(1e-4));
    // -g eta / (kappa + i delta_c) evaluated by hand
    const cx ref = -155.0 * 132.0 / cx(1000.0, 200.0);
    CHECK(om.real() == doctest::Approx(ref.real()).epsilon(1e-15));
    CHECK(om.imag() == doctest::Approx(ref.imag()).epsilon(1e-15));

    CHECK(cavity_drive(155.0, 0.0, 1000.0, 200.0) == cx(0.0, 0.0));
    const cx real_case = cavity_drive(10.0, 10.0, 10.0, 0.0);
    CHECK(real_case.real() == -10.0);
    CHECK(real_case.imag() == 0.0);
}

TEST_CASE("effective drive follows the scenario kind") {
    Params p = cavity_params(155.0, 1000.0, 200.0, 132.0);
    p.omega_drive = cx(3.0, 0.0);
    CHECK(effective_drive(p, ScenarioKind::FreeSpaceClosed) == cx(3.0, 0.0));
    CHECK(effective_drive(p, ScenarioKind::CavityClosed) == cavity_drive(155.0, 132.0, 1000.0, 200.0));

    Params bad = p;
    bad.kappa = 0.0;
    CHECK_THROWS_AS(Scenario(ScenarioKind::CavityClosed, bad), ConfigError);
}

TEST_CASE("cooperativity") {
    CHECK(cooperativity(cavity_params(155.0, 1000.0, 200.0, 132.0)) == doctest::Approx(24.025).epsilon(1e-14));
    CHECK(cooperativity(cavity_params(0.0, 1000.0, 200.0, 132.0)) == 0.0);
    Params p = cavity_params(7.5, 375.0, 10.0, 50.0);
    p.gamma = 0.7;
    p.gamma_prime = 0.3;
    CHECK(cooperativity(p) == doctest::Approx(0.15).epsilon(1e-14));
    // pure: identical inputs give identical bits
    CHECK(cooperativity(p) == cooperativity(p));
}

TEST_CASE("scenario invariants") {
    Params p;
    p.omega_drive = cx(1.0, 0.0);
    p.delta_a = 10.0;
    p.omega_rec = 0.5;
    p.gamma_prime = 0.1;
    CHECK_THROWS_AS(Scenario(ScenarioKind::FreeSpaceClosed, p), ConfigError);
    CHECK_NOTHROW(Scenario(ScenarioKind::FreeSpaceNonClosed, p));

    Params q = cavity_params(1.0, 10.0, 1.0, 1.0);
    q.n_emitters = 3;
    CHECK_THROWS_AS(Scenario(ScenarioKind::CavityClosed, q), ConfigError);
    CHECK_NOTHROW(Scenario(ScenarioKind::CavityClosedMany, q));

    CHECK(scenario_kind_from_string("CavityNonClosedMany") == ScenarioKind::CavityNonClosedMany);
    CHECK(to_string(ScenarioKind::FreeSpaceClosed) == "FreeSpaceClosed");
    CHECK_THROWS_AS(scenario_kind_from_string("Cavity"), ConfigError);
}

TEST_CASE("minimal free-space config") {
    const auto cfg = parse_config_text(R"({
        "params": {"omega": 1, "delta_a": 10, "omega_rec": 0.5},
        "scenario": {"kind": "FreeSpaceClosed"},
        "initial": {"kv0": 18},
        "integrator": {"t_end": 3000}
    })");
    CHECK(cfg.scenario.kind() == ScenarioKind::FreeSpaceClosed);
    CHECK(cfg.scenario.params().omega_drive == cx(1.0, 0.0));
    CHECK(cfg.scenario.params().delta_a == 10.0);
    CHECK(cfg.initial.kv_mean == 18.0);
    CHECK(cfg.integrator.rel_tol == 1e-8);
    CHECK(cfg.integrator.abs_tol == 1e-10);
    CHECK(cfg.integrator.max_step == 1.0);

    const auto echo = echo_config(cfg);
    CHECK(echo["integrator"]["rel_tol"].get<double>() == 1e-8);
    CHECK(echo["integrator"]["abs_tol"].get<double>() == 1e-10);
}

TEST_CASE("config round trip is bit identical") {
    const auto cfg = parse_config_text(R"({
        "params": {"gamma": 0.85, "gamma_prime": 0.15, "g": 155, "kappa": 1000,
                   "delta_a": 200, "delta_c": 200, "eta": 132, "omega_rec": 2.5},
        "scenario": {"kind": "CavityNonClosed"},
        "initial": {"kv0": 30, "theta0": 0.3},
        "integrator": {"t_end": 100, "rel_tol": 1e-9},
        "recording": {"stride": 0.1, "observables": ["w", "ng"]}
    })");
    const auto again = parse_config(echo_config(cfg));
    const Params& a = cfg.scenario.params();
    const Params& b = again.scenario.params();
    CHECK(a.gamma == b.gamma);
    CHECK(a.gamma_prime == b.gamma_prime);
    CHECK(a.g == b.g);
    CHECK(a.kappa == b.kappa);
    CHECK(a.eta == b.eta);
    CHECK(a.omega_drive == b.omega_drive);
    CHECK(a.omega_rec == b.omega_rec);
    CHECK(again.initial.theta0 == cfg.initial.theta0);
    CHECK(again.integrator.max_step == cfg.integrator.max_step);
    CHECK(again.integrator.max_step == 0.5 / 1000.0);
    CHECK(again.integrator.ng_stop == kFinalPopulationThreshold);
    CHECK(again.recording.stride == cfg.recording.stride);
    CHECK(again.recording.observables == cfg.recording.observables);
    CHECK(echo_config(again) == echo_config(cfg));
}

TEST_CASE("config errors carry the key path") {
    auto key_of = [](const char* text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<no error>");
    };
    CHECK(key_of(R"({"params": {"omega": 1, "bogus": 2}, "scenario": {"kind": "FreeSpaceClosed"},
                     "integrator": {"t_end": 1}})") == "params.bogus");
    CHECK(key_of(R"({"params": {"omega": 1, "delta_a": 10, "omega_rec": 0.5}, "scenario": {"kind": "FreeSpaceClosed"},
                     "initial": {"kv0": 1}, "integrator": {}})") == "integrator.t_end");
    CHECK(key_of(R"({"params": {"omega": 1, "gamma_prime": 0.2}, "scenario": {"kind": "FreeSpaceClosed"},
                     "integrator": {"t_end": 1}})") != "<no error>");
    CHECK(key_of(R"({"params": {"omega": 1, "delta_a": 10, "omega_rec": 0.5}, "scenario": {"kind": "FreeSpaceClosed"},
                     "initial": {"kv0": 1}, "integrator": {"t_end": 1}, "recording": {"observables": ["ng"]}})") ==
          "recording.observables");
    CHECK(key_of(R"({"params": {"omega": 1, "delta_a": 10, "omega_rec": 0.5}, "scenario": {"kind": "FreeSpaceClosed"},
                     "initial": {"kv0": 1, "seed": -1}, "integrator": {"t_end": 1}})") == "initial.seed");
    CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
}
