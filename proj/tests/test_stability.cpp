#include <doctest.h>

#include <cmath>
#include <random>

#include "kinetra/stability.hpp"

using namespace kinetra;

namespace {

MaxwellianTable two_speed_table(int n_rho = 101, double tol = 1e-12) {
  ModelParams p;
  p.grid = build_grid(2, 1.0, 1.0);
  p.prob = AccelProbability::linear();
  const auto t = build_interaction_tables(p.grid);
  TableBuildOptions opts;
  opts.n_rho = n_rho;
  opts.tol = tol;
  return build_maxwellian_table(p, t, opts);
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("mu_bgk matches the two-speed closed form 2 rho (1 - 2 rho)") {
  const auto table = two_speed_table();
  CHECK(mu_bgk(table, 0.25) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(mu_bgk(table, 0.5) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(mu_bgk(table, 0.75) == doctest::Approx(-0.75).epsilon(1e-6));
}

TEST_CASE("proposition-1 hypotheses and conclusion on the two-speed model") {
  const auto table = two_speed_table();

  const auto congested = check_proposition1(table, 0.75);
  CHECK(congested.hypotheses_hold);  // F' = -0.5 < 0 and dVar = -0.1875 < 0
  CHECK(congested.mu_negative);

  const auto free_flow = check_proposition1(table, 0.25);
  CHECK_FALSE(free_flow.hypotheses_hold);
  CHECK_FALSE(free_flow.mu_negative);

  // wherever F' > 0 the first hypothesis fails regardless of the variance
  for (double rho : {0.05, 0.2, 0.45})
    CHECK_FALSE(check_proposition1(table, rho).hypotheses_hold);
}

TEST_CASE("proposition-1 implication holds across models and sweeps") {
  TableBuildOptions opts;
  opts.n_rho = 41;
  // (n_speeds, r) pairs whose braking jump lands on grid nodes
  const std::pair<int, int> sweeps[] = {{5, 1}, {9, 1}, {9, 2}};
  for (auto [n_speeds, r] : sweeps) {
    {
      for (auto prob : {AccelProbability::linear(), AccelProbability::power(2.0)}) {
        ModelParams p;
        p.grid = build_grid(n_speeds, 0.25, 0.25 / r);
        p.prob = prob;
        const auto t = build_interaction_tables(p.grid);
        const auto table = build_maxwellian_table(p, t, opts);
        REQUIRE(table.failed_samples.empty());
        for (double rho : table.rho_samples) {
          const auto c = check_proposition1(table, rho);
          if (c.hypotheses_hold) CHECK(c.mu_negative);
        }
      }
    }
  }
}

TEST_CASE("mu_arz closed forms") {
  SUBCASE("positive diffusion, sub-characteristic condition holds") {
    const ArzClosure c{SpeedClosure::linear(), HesitationLaw::power(2.0, 1.0)};  // h = 2 rho
    const auto d = mu_arz(c, 0.5);
    CHECK(d.mu == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(d.subcharacteristic);
  }
  SUBCASE("boundary case h = rho gives zero diffusion") {
    const ArzClosure c{SpeedClosure::linear(), HesitationLaw::power(1.0, 1.0)};
    const auto d = mu_arz(c, 0.4);
    CHECK(d.mu == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(d.subcharacteristic);
  }
  SUBCASE("weak hesitation violates the condition") {
    const ArzClosure c{SpeedClosure::linear(), HesitationLaw::power(1.0, 2.0)};  // h = rho^2
    const auto d = mu_arz(c, 0.25);
    CHECK(d.mu == doctest::Approx(-0.03125).epsilon(1e-12));
    CHECK_FALSE(d.subcharacteristic);
  }
}

TEST_CASE("sub-characteristic condition is equivalent to positive ARZ diffusion") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const ArzClosure c{SpeedClosure::linear(), HesitationLaw::power(u(rng), u(rng))};
    const double rho = 0.05 + 0.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto d = mu_arz(c, rho);
    CHECK((d.mu > 0.0) == d.subcharacteristic);
  }
}

TEST_CASE("non-increasing hesitation is rejected") {
  CHECK_THROWS_AS(HesitationLaw::power(-1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(HesitationLaw::custom([](double) { return 1.0; }), ConfigError);
  CHECK_THROWS_AS(HesitationLaw::custom([](double r) { return -r; }), ConfigError);
}

TEST_CASE("mu_modified = mu_bgk + pressure correction on the two-speed model") {
  const auto table = two_speed_table();
  const auto pressure = PressureLaw::power(1.5, 2.0);  // p = 3/2 rho^2
  // C(rho) = -rho^2 p' U' = 3 rho^3 with U' = -1
  CHECK(mu_modified(table, pressure, 0.75) == doctest::Approx(0.515625).epsilon(1e-5));
  CHECK(mu_modified(table, pressure, 0.25) ==
        doctest::Approx(0.25 + 3.0 * 0.015625).epsilon(1e-5));
}

TEST_CASE("constant pressure is rejected") {
  CHECK_THROWS_AS(PressureLaw::power(1.0, 0.5), ConfigError);   // m >= 1
  CHECK_THROWS_AS(PressureLaw::power(-1.0, 2.0), ConfigError);  // c > 0
  CHECK_THROWS_AS(PressureLaw::custom([](double) { return 0.3; }), ConfigError);
}

TEST_CASE("mu_modified dominates mu_bgk for admissible pressures") {
  const auto table = two_speed_table();
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uc(0.2, 3.0);
  std::uniform_real_distribution<double> um(1.0, 4.0);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pressure = PressureLaw::power(uc(rng), um(rng));
    for (double rho : table.rho_samples)
      CHECK(mu_modified(table, pressure, rho) >= mu_bgk(table, rho) - 1e-12);
  }
}

TEST_CASE("flux-form and speed-form routes agree") {
  // algebraically equal through F_eq = rho U_eq; checked where the table
  // derivatives are central (the one-sided end samples carry O(drho) bias)
  const auto table = two_speed_table();
  for (const auto& pressure : {PressureLaw::power(1.5, 2.0), PressureLaw::power(1.0, 3.0)})
    for (int i = 1; i + 1 < table.n_rho(); ++i) {
      const double rho = table.rho_samples[static_cast<std::size_t>(i)];
      CHECK(std::abs(mu_modified(table, pressure, rho) -
                     mu_modified_flux_form(table, pressure, rho)) <= 1e-6);
    }
}

TEST_CASE("classification of sign patterns") {
  SUBCASE("strictly positive profile is stable") {
    const auto rho = linspace(0.0, 1.0, 11);
    const std::vector<double> mu(11, 1.0);
    const auto c = classify(rho, mu);
    CHECK(c.stability == Stability::stable);
    CHECK(c.negative_intervals.empty());
  }

  SUBCASE("two-speed BGK profile is unstable (interval reaches rho_max)") {
    const auto table = two_speed_table();
    const auto profile = build_profile_bgk(table);
    CHECK(profile.classification == Stability::unstable);
    REQUIRE(profile.negative_intervals.size() == 1);
    CHECK(profile.negative_intervals[0].first == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(profile.negative_intervals[0].second == 1.0);
  }

  SUBCASE("interior negative interval is weakly unstable") {
    const auto rho = linspace(0.0, 1.0, 101);
    std::vector<double> mu;
    for (double r : rho) mu.push_back((r - 0.4) * (r - 0.7));  // negative on (0.4, 0.7)
    const auto c = classify(rho, mu);
    CHECK(c.stability == Stability::weakly_unstable);
    REQUIRE(c.negative_intervals.size() == 1);
    CHECK(c.negative_intervals[0].first == doctest::Approx(0.4).epsilon(1e-3));
    CHECK(c.negative_intervals[0].second == doctest::Approx(0.7).epsilon(1e-3));
  }

  SUBCASE("samples within atol count as zero") {
    const auto rho = linspace(0.0, 1.0, 5);
    const std::vector<double> mu{1.0, -1e-14, 1.0, 1.0, 1.0};
    CHECK(classify(rho, mu).stability == Stability::stable);
  }

  SUBCASE("classification is invariant under sample refinement") {
    const auto table_c = two_speed_table(26);
    const auto table_f = two_speed_table(101);
    const auto pc = build_profile_bgk(table_c);
    const auto pf = build_profile_bgk(table_f);
    CHECK(pc.classification == pf.classification);
    REQUIRE(pc.negative_intervals.size() == pf.negative_intervals.size());
    CHECK(std::abs(pc.negative_intervals[0].first - pf.negative_intervals[0].first) <= 0.05);
  }
}

TEST_CASE("modified two-speed profiles across the three regimes") {
  const auto table = two_speed_table();

  // p = 3/2 rho^2 gives mu = rho (2 - 4 rho + 3 rho^2), positive on (0, 1]
  CHECK(build_profile_modified(table, PressureLaw::power(1.5, 2.0)).classification ==
        Stability::stable);

  // p = c rho^3 gives mu = rho (2 - 4 rho + 3 c rho^3): for c in (2/3, 64/81)
  // the cubic dips below zero strictly inside (0, 1) and recovers at rho = 1
  const auto profile = build_profile_modified(table, PressureLaw::power(0.72, 3.0));
  CHECK(profile.classification == Stability::weakly_unstable);
  REQUIRE(!profile.negative_intervals.empty());
  for (const auto& [a, b] : profile.negative_intervals) {
    CHECK(a > 0.0);
    CHECK(b < 1.0);
  }

  // a weak pressure cannot rescue the congested tail
  CHECK(build_profile_modified(table, PressureLaw::power(0.3, 3.0)).classification ==
        Stability::unstable);
}

TEST_CASE("arz profile builder") {
  const ArzClosure c{SpeedClosure::linear(), HesitationLaw::power(2.0, 1.0)};
  const auto profile = build_profile_arz(c, 51);
  CHECK(profile.model == DiffusionModel::arz);
  CHECK(profile.classification == Stability::stable);  // mu = rho^2 (2 - 1) >= 0
}

}  // TEST_SUITE
