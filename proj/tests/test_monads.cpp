#include "support.hpp"

#include "wpb/monads.hpp"

#include <algorithm>

using namespace wpb;
using wpb::test::vec;

namespace {

const FinSet kAB("X", {"a", "b"});

std::vector<FinSet> carriers_up_to(std::size_t n) {
  std::vector<FinSet> cs;
  for (std::size_t k = 0; k <= n; ++k) cs.push_back(FinSet::range("C" + std::to_string(k), k, "c"));
  return cs;
}

}  // namespace

TEST_CASE("units of every monad") {
  CHECK(rows_equal(unit(MonadKind::Powerset, kAB, "a"), Row{Subset{0b01}}));
  CHECK(rows_equal(unit(MonadKind::Dist, kAB, "b"), Row{Weights{vec({"0", "1"})}}));
  CHECK(rows_equal(unit(MonadKind::SubDist, kAB, "a"), Row{Weights{vec({"1", "0"})}}));
  CHECK(rows_equal(unit(MonadKind::NonemptyPowersetLift, kAB, "b"), Row{LiftedSubset{0b10, false}}));
  // the up-closure of {{a}} in 2^{a,b} is {{a},{a,b}}
  CHECK(rows_equal(unit(MonadKind::UpPowerset, kAB, "a"), Row{UpFamily{{0b01, 0b11}}}));
  CHECK(rows_equal(unit(MonadKind::CvDist, kAB, "a"), Row{DistributionPolytope{{vec({"1", "0"})}}}));
  CHECK_THROWS_AS(unit(MonadKind::Powerset, kAB, "c"), InputError);
}

TEST_CASE("Powerset composition is a union over the image") {
  const FinSet x("X", {"x"}), y("Y", {"y0", "y1"}), z("Z", {"z"});
  const KleisliArrow f = wpb::test::relation(x, y, {0b11});
  const KleisliArrow g = wpb::test::relation(y, z, {0b1, 0b0});
  CHECK(rows_equal(kleisli_compose(f, g).row(0), Row{Subset{0b1}}));
}

TEST_CASE("SubDist composition is a sum of products") {
  const FinSet x("X", {"x"}), y("Y", {"y"}), z("Z", {"z"});
  const KleisliArrow f = wpb::test::weights_arrow(MonadKind::SubDist, x, y, {vec({"1/2"})});
  const KleisliArrow g = wpb::test::weights_arrow(MonadKind::SubDist, y, z, {vec({"1/2"})});
  CHECK(rows_equal(kleisli_compose(f, g).row(0), Row{Weights{vec({"1/4"})}}));
}

TEST_CASE("NonemptyPowersetLift absorbs bottom") {
  const FinSet x("X", {"x"}), y("Y", {"y0", "y1"}), z("Z", {"z0", "z1"});
  const KleisliArrow f(MonadKind::NonemptyPowersetLift, x, y, std::vector<Row>{LiftedSubset{0b11, false}});
  const KleisliArrow g(MonadKind::NonemptyPowersetLift, y, z,
                       std::vector<Row>{LiftedSubset{0b01, false}, LiftedSubset{0b10, true}});
  CHECK(rows_equal(kleisli_compose(f, g).row(0), Row{LiftedSubset{0b11, true}}));
}

TEST_CASE("composition rejects mismatched carriers and monads") {
  const FinSet x("X", {"x"}), y("Y", {"y"});
  const KleisliArrow f = wpb::test::relation(x, y, {0b1});
  CHECK_THROWS_AS(kleisli_compose(f, f.monad() == MonadKind::Powerset ? wpb::test::relation(x, x, {1}) : f),
                  std::invalid_argument);
  const KleisliArrow d = wpb::test::weights_arrow(MonadKind::Dist, y, y, {vec({"1"})});
  CHECK_THROWS_AS(kleisli_compose(f, d), std::invalid_argument);
}

TEST_CASE("all six monads satisfy the monad laws at small carriers") {
  for (MonadKind k : kAllMonads) {
    CAPTURE(to_string(k));
    LawOptions opts;
    opts.samples = 100;
    const Verdict v = check_monad_laws(k, carriers_up_to(2), opts);
    CHECK(v.healthy());
    CHECK(v.checked > 0);
  }
}

TEST_CASE("SubDist laws hold on 50 random arrows") {
  LawOptions opts;
  opts.samples = 50;
  opts.seed = 17;
  CHECK(check_monad_laws(MonadKind::SubDist, {FinSet::range("A", 2), FinSet::range("B", 3)}, opts).healthy());
}

TEST_CASE("a composite that intersects instead of uniting breaks the laws") {
  const ComposeFn broken = [](const KleisliArrow& f, const KleisliArrow& g) {
    std::vector<Row> rows;
    for (const Row& r : f.rows()) {
      Mask acc = g.target().full_mask();
      for (std::size_t y : members(std::get<Subset>(r).elements)) acc &= std::get<Subset>(g.row(y)).elements;
      rows.emplace_back(Subset{acc});
    }
    return KleisliArrow(MonadKind::Powerset, f.source(), g.target(), rows);
  };
  const Verdict v = check_monad_laws(MonadKind::Powerset, carriers_up_to(2), {}, broken);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
}

TEST_CASE("up_closure") {
  CHECK(up_closure({}, 2).members.empty());
  CHECK(up_closure({0b01}, 2).members == std::vector<Mask>{0b01, 0b11});
  const auto closed = up_closure({0b01}, 2);
  CHECK(up_closure(closed.members, 2).members == closed.members);
  CHECK(is_up_closed(closed.members, 2));
  CHECK_FALSE(is_up_closed({0b01}, 2));
}

TEST_CASE("row enumeration sizes") {
  CHECK(enumerate_rows(MonadKind::Powerset, 2).size() == 4);
  CHECK(enumerate_rows(MonadKind::NonemptyPowersetLift, 2).size() == 7);
  CHECK(enumerate_rows(MonadKind::UpPowerset, 2).size() == 6);
  CHECK(enumerate_rows(MonadKind::UpPowerset, 3).size() == 20);
  CHECK_THROWS_AS(enumerate_rows(MonadKind::Dist, 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_rows(MonadKind::Powerset, 10, 100), SizeGuardError);
}

TEST_CASE("row validation codes") {
  auto code_of = [](MonadKind k, const Row& r, std::size_t n) -> std::string {
    try {
      validate_row(k, r, n);
    } catch (const InputError& e) {
      return e.code();
    }
    return "";
  };
  CHECK(code_of(MonadKind::SubDist, Weights{vec({"5/8", "1/2"})}, 2) == "mass-exceeds-one");
  CHECK(code_of(MonadKind::Dist, Weights{vec({"1/2", "1/4"})}, 2) == "mass-not-one");
  CHECK(code_of(MonadKind::SubDist, Weights{vec({"-1/2", "1/2"})}, 2) == "negative-probability");
  CHECK(code_of(MonadKind::NonemptyPowersetLift, LiftedSubset{0, false}, 2) == "empty-row");
  CHECK(code_of(MonadKind::UpPowerset, UpFamily{{0b01}}, 2) == "not-up-closed");
  CHECK(code_of(MonadKind::CvDist, DistributionPolytope{{}}, 2) == "empty-polytope");
  CHECK(code_of(MonadKind::SubDist, Weights{vec({"1/2", "1/2"})}, 2).empty());
}

TEST_CASE("CvDist composition does not depend on vertex order") {
  Sampler s(9);
  const FinSet x = FinSet::range("X", 2), y = FinSet::range("Y", 3), z = FinSet::range("Z", 3);
  for (int trial = 0; trial < 20; ++trial) {
    const KleisliArrow f = random_arrow(MonadKind::CvDist, x, y, s);
    const KleisliArrow g = random_arrow(MonadKind::CvDist, y, z, s);
    std::vector<Row> reversed;
    for (const Row& r : g.rows()) {
      auto p = std::get<DistributionPolytope>(r);
      std::reverse(p.vertices.begin(), p.vertices.end());
      reversed.emplace_back(p);
    }
    const KleisliArrow g2(MonadKind::CvDist, y, z, reversed);
    CHECK(kleisli_compose(f, g) == kleisli_compose(f, g2));
  }
}

TEST_CASE("CvDist equality compares hulls") {
  const FinSet y = FinSet::range("Y", 2);
  const Row seg{DistributionPolytope{{vec({"1", "0"}), vec({"0", "1"})}}};
  const Row with_mid{DistributionPolytope{{vec({"1", "0"}), vec({"1/2", "1/2"}), vec({"0", "1"})}}};
  const Row half{DistributionPolytope{{vec({"1", "0"}), vec({"1/2", "1/2"})}}};
  CHECK(rows_equal(seg, with_mid));
  CHECK_FALSE(rows_equal(seg, half));
  CHECK(dedupe_vertices({vec({"1", "0"}), vec({"1", "0"})}).size() == 1);
}
