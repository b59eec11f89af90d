// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vlc/experiment.hpp"
#include "vlc/oracle.hpp"

using namespace vlc;

TEST_CASE("two grid points visit the two endpoints") {
  const ScenarioConfig cfg = testing::tiny_config(1, 1);
  const Instance inst = build_instance(cfg, 3);
  const QosSpec qos = make_qos(cfg, 1, 1, 0.5);
  const OracleResult r = grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 2);
  CHECK(r.evaluated == 2);
}

TEST_CASE("an empty power range collapses to one grid point") {
  const ScenarioConfig cfg = testing::tiny_config(1, 1);
  const Instance inst = build_instance(cfg, 1);  // rate floor above the cap
  const QosSpec qos = make_qos(cfg, 1, 1, 0.5);
  const OracleResult r = grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 2);
  CHECK(r.evaluated == 1);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("grid refinement never loses") {
  const ScenarioConfig cfg = testing::tiny_config(1, 1);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = build_instance(cfg, seed);
    const QosSpec qos = make_qos(cfg, 1, 1, 0.5);
    // point sets nest when (n - 1) divides (2n - 1) - 1
    const OracleResult coarse = grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 101);
    const OracleResult fine = grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 201);
    REQUIRE(coarse.feasible == fine.feasible);
    if (coarse.feasible) CHECK(fine.objective >= coarse.objective * (1.0 - 1e-12));
    const OracleResult finer = grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 401);
    if (fine.feasible) {
      CHECK(std::abs(finer.objective - fine.objective) <= 0.005 * std::abs(fine.objective));
    }
  }
}

TEST_CASE("accepted grid points pass the audit") {
  const ScenarioConfig cfg = testing::tiny_config(2, 1);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = build_instance(cfg, seed);
    for (double alpha : {0.0, 0.5, 1.0}) {
      const QosSpec qos = make_qos(cfg, 2, 1, alpha);
      const OracleResult r = grid_search(inst.channel, inst.precoder, qos, cfg.phys, alpha, 60);
      if (!r.feasible) continue;
      CHECK(r.evaluated == 3600);
      const auto bad =
          testing::audit(r.allocation, inst.channel.iu(), inst.channel.ehu(), inst.precoder.G,
                         qos, cfg.phys, 1e-9, testing::Coupling::kEquality);
      CHECK(bad.empty());
    }
  }
}

TEST_CASE("oracle guards") {
  const ScenarioConfig cfg = testing::tiny_config(3, 0);
  const Instance inst = build_instance(cfg, 1);
  const QosSpec qos = make_qos(cfg, 3, 0, 0.5);
  CHECK_THROWS_AS(grid_search(inst.channel, inst.precoder, qos, cfg.phys, 0.5, 10),
                  std::invalid_argument);
  const ScenarioConfig one = testing::tiny_config(1, 1);
  const Instance small = build_instance(one, 1);
  CHECK_THROWS_AS(grid_search(small.channel, small.precoder, make_qos(one, 1, 1, 0.5), one.phys,
                              0.5, 1),
                  std::invalid_argument);
}

TEST_CASE("oracle reports unreachable energy") {
  ScenarioConfig cfg = testing::tiny_config(1, 1);
  cfg.energy_threshold = 10.0;
  const Instance inst = build_instance(cfg, 1);
  const OracleResult r =
      grid_search(inst.channel, inst.precoder, make_qos(cfg, 1, 1, 0.5), cfg.phys, 0.5, 50);
  CHECK_FALSE(r.feasible);
}
