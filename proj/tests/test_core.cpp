// Copyright 2026 The ocf-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ocf/core.hpp"
#include "ocf/solver.hpp"
#include "ocf/valuefns.hpp"
#include "support.hpp"

using namespace ocf;
using namespace ocf::testing;

namespace {

Outcome DisjointOutcome(const GameSpec& spec) {
  CoalitionStructure s;
  s.coalitions.emplace_back(ResourceVector{{8, 8, 0}});
  s.coalitions.emplace_back(ResourceVector{{0, 0, 8}});
  return MakeOutcome(spec, std::move(s));
}

Outcome OverlapOutcome(const GameSpec& spec) {
  CoalitionStructure s;
  s.coalitions.emplace_back(ResourceVector{{8, 4, 0}});
  s.coalitions.emplace_back(ResourceVector{{0, 4, 8}});
  return MakeOutcome(spec, std::move(s));
}

}  // namespace

TEST_CASE("coalition_value on the software-company fixture") {
  GameSpec spec = SoftwareCompanySpec();
  CHECK(CoalitionValue(spec, Coalition{ResourceVector{{8, 4, 0}}}) == 2400.0);
  CHECK(CoalitionValue(spec, Coalition{ResourceVector{{0, 0, 8}}}) == 1000.0);
  CHECK(CoalitionValue(spec, Coalition{ResourceVector{{0, 0, 0}}}) == 0.0);
  CHECK_THROWS_AS(CoalitionValue(spec, Coalition{ResourceVector{{9, 0, 0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoalitionValue(spec, Coalition{ResourceVector{{-1, 0, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("divide_payoff rules") {
  GameSpec spec = SoftwareCompanySpec();
  const Coalition big{ResourceVector{{8, 4, 0}}};

  auto shares = DividePayoff(spec, big, 2400.0);
  CHECK(shares == std::vector<double>{1600.0, 800.0, 0.0});

  auto solo = DividePayoff(spec, Coalition{ResourceVector{{5, 0, 0}}}, 7.0);
  CHECK(solo == std::vector<double>{7.0, 0.0, 0.0});

  GameSpec equal_spec = SoftwareCompanySpec(DivisionRule::kEqual);
  auto equal = DividePayoff(equal_spec, big, 2400.0);
  CHECK(equal == std::vector<double>{1200.0, 1200.0, 0.0});

  CHECK_THROWS_AS(DividePayoff(spec, Coalition{ResourceVector{{0, 0, 0}}}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("divide_payoff sums exactly even with awkward fractions") {
  GameSpec spec = SoftwareCompanySpec();
  const Coalition c{ResourceVector{{3, 2, 2}}};
  auto shares = DividePayoff(spec, c, 1.0);
  CHECK(shares[0] + shares[1] + shares[2] == 1.0);
}

TEST_CASE("player_payoff on the worked-example outcomes") {
  GameSpec spec = SoftwareCompanySpec();
  const Outcome overlap = OverlapOutcome(spec);
  for (int i = 0; i < 3; ++i)
    CHECK(PlayerPayoff(spec, overlap, i) == doctest::Approx(1600.0));

  const Outcome disjoint = DisjointOutcome(spec);
  CHECK(PlayerPayoff(spec, disjoint, 0) == doctest::Approx(1200.0));
  CHECK(PlayerPayoff(spec, disjoint, 1) == doctest::Approx(1200.0));
  CHECK(PlayerPayoff(spec, disjoint, 2) == doctest::Approx(1000.0));

  const Outcome empty = MakeOutcome(spec, CoalitionStructure{});
  for (int i = 0; i < 3; ++i) CHECK(PlayerPayoff(spec, empty, i) == 0.0);
}

TEST_CASE("social_welfare sums coalition values") {
  GameSpec spec = SoftwareCompanySpec();
  CHECK(Welfare(spec, OverlapOutcome(spec)) == 4800.0);
  CHECK(Welfare(spec, MakeOutcome(spec, CoalitionStructure{})) == 0.0);

  // Random structures match direct summation.
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto game = MakeRandomKCoalitionGame(rng, 4, 3, 2, 2);
    CoalitionStructure s = RandomStructure(rng, game.spec);
    const StructureContext ctx{&s};
    double direct = 0.0;
    for (const auto& c : s.coalitions)
      direct += CoalitionValue(game.spec, c, ctx);
    CHECK(SocialWelfare(game.spec, s, ctx) == direct);
  }
}

TEST_CASE("arbitration payoffs per kind") {
  const Outcome outcome = OverlapOutcome(SoftwareCompanySpec());

  Deviation dev;
  dev.deviators = {1};  // B touches both coalitions

  SUBCASE("conservative is identically zero") {
    GameSpec spec = SoftwareCompanySpec(DivisionRule::kProportional,
                                        ArbitrationKind::kConservative);
    dev.withdrawals[0] = ResourceVector{{0, 4, 0}};
    CHECK(ArbitrationPayoff(spec, outcome, dev, 0) == 0.0);
    CHECK(ArbitrationPayoff(spec, outcome, dev, 1) == 0.0);
  }

  SUBCASE("optimistic with no withdrawal equals the prior share") {
    GameSpec spec = SoftwareCompanySpec();
    CHECK(ArbitrationPayoff(spec, outcome, dev, 0) == doctest::Approx(800.0));
    CHECK(ArbitrationPayoff(spec, outcome, dev, 1) == doctest::Approx(800.0));
  }

  SUBCASE("optimistic full withdrawal can go negative") {
    GameSpec spec = SoftwareCompanySpec();
    dev.withdrawals[0] = ResourceVector{{0, 4, 0}};
    // v((8,0,0)) - A's payoff 1600 = 1000 - 1600
    CHECK(ArbitrationPayoff(spec, outcome, dev, 0) == doctest::Approx(-600.0));
  }

  SUBCASE("refined pays the prior share only where untouched") {
    GameSpec spec = SoftwareCompanySpec(DivisionRule::kProportional,
                                        ArbitrationKind::kRefined);
    dev.withdrawals[0] = ResourceVector{{0, 4, 0}};
    CHECK(ArbitrationPayoff(spec, outcome, dev, 0) == 0.0);
    CHECK(ArbitrationPayoff(spec, outcome, dev, 1) == doctest::Approx(800.0));
  }
}

TEST_CASE("grand deviation from the CF outcome is profitable, 3400 < 4800") {
  for (auto kind : {ArbitrationKind::kConservative, ArbitrationKind::kRefined,
                    ArbitrationKind::kOptimistic}) {
    GameSpec spec = SoftwareCompanySpec(DivisionRule::kProportional, kind);
    const Outcome disjoint = DisjointOutcome(spec);
    Deviation dev;
    dev.deviators = {0, 1, 2};
    dev.replacement.coalitions.emplace_back(ResourceVector{{8, 4, 0}});
    dev.replacement.coalitions.emplace_back(ResourceVector{{0, 4, 8}});
    const auto pr = IsProfitable(spec, disjoint, dev);
    CHECK(pr.profitable);
    CHECK(pr.lhs == doctest::Approx(3400.0));
    CHECK(pr.rhs == doctest::Approx(4800.0));
  }
}

TEST_CASE("the null deviation is never profitable, all arbitration kinds") {
  for (auto kind : {ArbitrationKind::kConservative, ArbitrationKind::kRefined,
                    ArbitrationKind::kOptimistic}) {
    GameSpec spec = SoftwareCompanySpec(DivisionRule::kProportional, kind);
    const Outcome overlap = OverlapOutcome(spec);
    Deviation dev;
    dev.deviators = {0, 1};
    // coalition (8,4,0) is wholly owned by {A,B}: keep it as-is.
    dev.replacement.coalitions.emplace_back(ResourceVector{{8, 4, 0}});
    const auto pr = IsProfitable(spec, overlap, dev);
    CHECK_FALSE(pr.profitable);
  }
}

TEST_CASE("apply_deviation reaches the overlapping optimum payoffs") {
  GameSpec spec = SoftwareCompanySpec();
  const Outcome disjoint = DisjointOutcome(spec);
  Deviation dev;
  dev.deviators = {0, 1, 2};
  dev.replacement.coalitions.emplace_back(ResourceVector{{8, 4, 0}});
  dev.replacement.coalitions.emplace_back(ResourceVector{{0, 4, 8}});
  const Outcome after = ApplyDeviation(spec, disjoint, dev);
  for (int i = 0; i < 3; ++i)
    CHECK(PlayerPayoff(spec, after, i) == doctest::Approx(1600.0));
  CHECK(Welfare(spec, after) == 4800.0);
}

TEST_CASE("full withdrawal under conservative arbitration pays only the replacement") {
  GameSpec spec = SoftwareCompanySpec(DivisionRule::kProportional,
                                      ArbitrationKind::kConservative);
  const Outcome overlap = OverlapOutcome(spec);
  Deviation dev;
  dev.deviators = {1};
  dev.withdrawals[0] = ResourceVector{{0, 4, 0}};
  dev.withdrawals[1] = ResourceVector{{0, 4, 0}};
  dev.replacement.coalitions.emplace_back(ResourceVector{{0, 8, 0}});
  const Outcome after = ApplyDeviation(spec, overlap, dev);
  CHECK(PlayerPayoff(spec, after, 1) == doctest::Approx(1000.0));
  // Non-deviators absorb the destroyed value but the books stay balanced.
  for (int idx = 0; idx < after.structure.size(); ++idx) {
    double sum = 0.0;
    for (double x : after.allocation.payoffs[idx]) sum += x;
    const StructureContext ctx{&after.structure};
    CHECK(sum == doctest::Approx(
        CoalitionValue(spec, after.structure.coalitions[idx], ctx)));
  }
}

TEST_CASE("apply_deviation rejects structural violations") {
  GameSpec spec = SoftwareCompanySpec();
  const Outcome overlap = OverlapOutcome(spec);
  Deviation dev;
  dev.deviators = {0};
  // A has no free resources: deploying a new coalition overdraws.
  dev.replacement.coalitions.emplace_back(ResourceVector{{1, 0, 0}});
  CHECK_THROWS_AS(ApplyDeviation(spec, overlap, dev), std::invalid_argument);
}

TEST_CASE("proposition 1: every optimistic-profitable deviation raises welfare") {
  Rng rng(2026);
  int profitable_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto game = MakeRandomKCoalitionGame(rng, 5, 3, 2, 2);
    Outcome outcome = MakeOutcome(game.spec, RandomStructure(rng, game.spec));
    const double before = Welfare(game.spec, outcome);
    const StructureContext ctx{&outcome.structure};
    DeviationEnumerator en(game.spec, outcome, ctx);
    Deviation dev;
    while (en.Next(dev)) {
      const auto pr = IsProfitable(game.spec, outcome, dev, ctx);
      if (!pr.profitable) continue;
      ++profitable_seen;
      const Outcome after = ApplyDeviation(game.spec, outcome, dev, ctx);
      const double welfare_after = Welfare(game.spec, after);
      CHECK(welfare_after > before);
      // The welfare gain equals the Eq.-(1) margin.
      CHECK(welfare_after - before ==
            doctest::Approx(pr.rhs - pr.lhs).epsilon(1e-9));
    }
  }
  CHECK(profitable_seen > 100);
}

TEST_CASE("efficiency and budgets hold through whole deviation sequences") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto game = MakeRandomKCoalitionGame(rng, 4, 3, 2, 2);
    Outcome outcome = MakeOutcome(game.spec, RandomStructure(rng, game.spec));
    auto [final_outcome, report] = SolveKCoalition(game.spec, outcome);
    CHECK(report.terminated == TerminationStatus::kStable);
    CHECK(report.rejected_unrealized == 0);
    ValidateOutcome(game.spec, final_outcome);
    const StructureContext ctx{&final_outcome.structure};
    for (int idx = 0; idx < final_outcome.structure.size(); ++idx) {
      double sum = 0.0;
      for (double x : final_outcome.allocation.payoffs[idx]) sum += x;
      const double v = CoalitionValue(
          game.spec, final_outcome.structure.coalitions[idx], ctx);
      CHECK(sum == doctest::Approx(v).epsilon(1e-9));
    }
    for (int i = 0; i < game.spec.n_players; ++i) {
      const int committed = final_outcome.structure.Committed(i);
      CHECK(committed >= 0);
      CHECK(committed <= game.spec.budgets[i]);
    }
    // Strictly increasing welfare trace.
    for (std::size_t k = 1; k < report.welfare_trace.size(); ++k)
      CHECK(report.welfare_trace[k] > report.welfare_trace[k - 1]);
  }
}

TEST_CASE("proportional division commutes with player permutation") {
  GameSpec spec;
  spec.n_players = 4;
  spec.budgets = {5, 5, 5, 5};
  spec.max_coalitions_per_player = 1;
  spec.max_deviation_size = 1;
  spec.value_fn = ZeroValue();

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> units(4);
    for (int& u : units) u = rng.NextInt(0, 5);
    if (ResourceVector{units}.IsZero()) units[0] = 1;
    const double value = rng.NextInt(1, 100);
    const auto base = DividePayoff(spec, Coalition{ResourceVector{units}}, value);

    std::vector<int> perm{2, 0, 3, 1};
    std::vector<int> permuted(4);
    for (int i = 0; i < 4; ++i) permuted[perm[i]] = units[i];
    const auto mapped =
        DividePayoff(spec, Coalition{ResourceVector{permuted}}, value);
    for (int i = 0; i < 4; ++i)
      CHECK(mapped[perm[i]] == doctest::Approx(base[i]).epsilon(1e-12));
  }
}

TEST_CASE("arbitration ordering on untouched coalitions") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto game = MakeRandomKCoalitionGame(rng, 4, 3, 2, 2);
    Outcome outcome = MakeOutcome(game.spec, RandomStructure(rng, game.spec));
    if (outcome.structure.empty()) continue;
    Deviation dev;
    dev.deviators = {0};
    const StructureSplit split = SplitByDeviators(outcome, dev.deviators);
    for (int idx : split.touched) {
      GameSpec cons = game.spec;
      cons.arbitration = ArbitrationKind::kConservative;
      GameSpec refined = game.spec;
      refined.arbitration = ArbitrationKind::kRefined;
      GameSpec opt = game.spec;
      opt.arbitration = ArbitrationKind::kOptimistic;
      const double a_cons = ArbitrationPayoff(cons, outcome, dev, idx);
      const double a_ref = ArbitrationPayoff(refined, outcome, dev, idx);
      const double a_opt = ArbitrationPayoff(opt, outcome, dev, idx);
      CHECK(a_cons <= a_ref + 1e-12);
      // With d = 0, the optimistic leftover is exactly the prior share.
      double prior = 0.0;
      for (int i : dev.deviators) prior += outcome.allocation.payoffs[idx][i];
      CHECK(a_opt == doctest::Approx(prior).epsilon(1e-12));
    }
  }
}
