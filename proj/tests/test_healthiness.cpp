#include "support.hpp"

#include "wpb/healthiness.hpp"
#include "wpb/modalities.hpp"
#include "wpb/semantics.hpp"

using namespace wpb;
using wpb::test::q;
using wpb::test::vec;

namespace {

const FinSet kY2 = FinSet::range("Y", 2, "y");
const FinSet kX1 = FinSet::range("X", 1, "x");

RationalTransformer scalar_fn(const FinSet& y, std::function<Rational(const RationalVector&)> fn) {
  return RationalTransformer::pointwise(y, kX1, [fn](const RationalVector& p, std::size_t) { return fn(p); });
}

template <typename Visit>
void each_arrow(MonadKind k, std::size_t nx, std::size_t ny, Visit visit) {
  for_each_arrow(k, FinSet::range("X", nx), FinSet::range("Y", ny), [&](const KleisliArrow& f) {
    visit(f);
    return true;
  });
}

}  // namespace

TEST_CASE("join preservation") {
  CHECK(check_join_preserving(BoolTransformer::identity(kY2)).healthy());
  const Verdict v = check_join_preserving(BoolTransformer::constant(kY2, kX1, 1));
  REQUIRE(v.unhealthy());
  CHECK(v.witness->law.find("bottom") != std::string::npos);
  wpb::test::require_sound(v);
  for (std::size_t n = 0; n <= 3; ++n)
    each_arrow(MonadKind::Powerset, n, n,
               [](const KleisliArrow& r) { CHECK(check_join_preserving(wp_diamond(r)).healthy()); });
}

TEST_CASE("meet preservation") {
  CHECK(check_meet_preserving(BoolTransformer::identity(kY2)).healthy());
  const Verdict v = check_meet_preserving(BoolTransformer::constant(kY2, kX1, 0));
  REQUIRE(v.unhealthy());
  CHECK(v.witness->law.find("top") != std::string::npos);
  wpb::test::require_sound(v);
  for (std::size_t n = 0; n <= 3; ++n)
    each_arrow(MonadKind::Powerset, n, n,
               [](const KleisliArrow& r) { CHECK(check_meet_preserving(wp_box(r)).healthy()); });
}

TEST_CASE("monotonicity") {
  CHECK(check_monotone(BoolTransformer::identity(kY2)).healthy());
  const auto negation = BoolTransformer::from_function(kY2, kY2, [](Mask m) { return ~m & 0b11; });
  const Verdict v = check_monotone(negation);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
  for (std::size_t n = 1; n <= 2; ++n)
    each_arrow(MonadKind::UpPowerset, n, n, [](const KleisliArrow& f) {
      CHECK(check_monotone(std::get<BoolTransformer>(pt_alternating(f, "game"))).healthy());
    });
}

TEST_CASE("strictness and nonempty meets") {
  CHECK(check_strict_nonempty_meets(BoolTransformer::constant(kY2, kX1, 0)).healthy());
  const Verdict v = check_strict_nonempty_meets(BoolTransformer::constant(kY2, kX1, 1));
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
  for (std::size_t n = 1; n <= 2; ++n)
    each_arrow(MonadKind::NonemptyPowersetLift, n, n, [](const KleisliArrow& f) {
      CHECK(check_strict_nonempty_meets(std::get<BoolTransformer>(pt_alternating(f, "dijkstra"))).healthy());
    });
}

TEST_CASE("the default probe grid") {
  const ProbeGrid g = ProbeGrid::standard(3);
  CHECK(g.meets_minimum(3));
  CHECK(g.scalars == default_scalars());
  for (const auto& p : g.predicates) CHECK(in_unit_cube(p));
  CHECK(g.predicates.size() > 55);
  const ProbeGrid again = ProbeGrid::standard(3);
  REQUIRE(again.predicates.size() == g.predicates.size());
  for (std::size_t i = 0; i < g.predicates.size(); ++i) CHECK(equal(g.predicates[i], again.predicates[i]));
  CHECK_THROWS_AS(ProbeGrid::custom({vec({"3/2", "0"})}, {}), InputError);
  CHECK_FALSE(ProbeGrid::custom({vec({"1", "0"})}, {q("1/2")}).meets_minimum(2));
}

TEST_CASE("GEMod morphisms, total variant") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  CHECK(check_gemod_morphism(RationalTransformer::identity(kY2), grid, GemodVariant::Total).healthy());
  const auto half = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2; });
  CHECK(check_gemod_morphism(half, grid, GemodVariant::Total).healthy());

  const auto square = scalar_fn(kY2, [](const RationalVector& p) { return p[0] * p[0]; });
  const Verdict v = check_gemod_morphism(square, grid, GemodVariant::Total);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
  // on a grid of Diracs and constants only the scaling law can fail:
  // phi(1/2 delta) = 1/4 but 1/2 phi(delta) = 1/2
  const ProbeGrid small = ProbeGrid::custom({dirac(2, 0), dirac(2, 1), constant(2, 0), constant(2, 1)}, {q("1/2")});
  const Verdict s = check_gemod_morphism(square, small, GemodVariant::Total);
  REQUIRE(s.unhealthy());
  CHECK(s.witness->law.find("scalars") != std::string::npos);
  CHECK(s.witness->lhs == "(1/4)");
  CHECK(s.witness->rhs == "(1/2)");
  wpb::test::require_sound(s);
}

TEST_CASE("GEMod morphisms, partial variant") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  const auto shifted = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2 + Rational(1, 2); });
  CHECK(check_gemod_morphism(shifted, grid, GemodVariant::Partial).healthy());
  CHECK(check_gemod_morphism(shifted, grid, GemodVariant::Total).unhealthy());
  const auto half = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2; });
  const Verdict v = check_gemod_morphism(half, grid, GemodVariant::Partial);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
}

TEST_CASE("effect module morphisms") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  CHECK(check_emod_morphism(RationalTransformer::identity(kY2), grid).healthy());
  const auto half = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2; });
  const Verdict v = check_emod_morphism(half, grid);
  REQUIRE(v.unhealthy());
  CHECK(v.witness->law.find("unit") != std::string::npos);
  wpb::test::require_sound(v);
  Sampler s(31);
  const Modality convex = builtin_modality("convex");
  for (int k = 0; k < 20; ++k) {
    const auto f = random_arrow(MonadKind::Dist, FinSet::range("X", 2), kY2, s);
    CHECK(check_emod_morphism(std::get<RationalTransformer>(pt_modality(f, convex)), grid).healthy());
  }
}

TEST_CASE("regular sublinear maps") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  const auto mn = scalar_fn(kY2, [](const RationalVector& p) { return std::min(p[0], p[1]); });
  CHECK(check_regular_sublinear(mn, grid).healthy());

  const auto mx = scalar_fn(kY2, [](const RationalVector& p) { return std::max(p[0], p[1]); });
  const Verdict v = check_regular_sublinear(mx, grid);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
  // p = (1/2, 0), q = (0, 1/2): max p + max q = 1 > max(p + q) = 1/2
  CHECK(mx(vec({"1/2", "0"}))[0] + mx(vec({"0", "1/2"}))[0] > mx(vec({"1/2", "1/2"}))[0]);

  const auto deficient = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2 + p[1] / 4; });
  const Verdict d = check_regular_sublinear(deficient, grid);
  REQUIRE(d.unhealthy());
  CHECK(d.witness->law.find("translation") != std::string::npos);
  wpb::test::require_sound(d);
  const auto full = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2 + p[1] / 2; });
  CHECK(check_regular_sublinear(full, grid).healthy());
}

TEST_CASE("values outside the unit interval are violations") {
  const auto big = scalar_fn(kY2, [](const RationalVector& p) { return p[0] * 2; });
  const Verdict v = check_gemod_morphism(big, ProbeGrid::standard(2), GemodVariant::Total);
  REQUIRE(v.unhealthy());
  CHECK(v.witness->law == "output lies in [0,1]");
  wpb::test::require_sound(v);
}

TEST_CASE("grids below the minimum are inconclusive") {
  const ProbeGrid sparse = ProbeGrid::custom({vec({"1/2", "1/2"})}, {q("1/2")});
  const auto mn = scalar_fn(kY2, [](const RationalVector& p) { return std::min(p[0], p[1]); });
  CHECK(check_regular_sublinear(mn, sparse).status == Status::Inconclusive);
}

TEST_CASE("enlarging a grid never turns a violation into a pass") {
  const auto square = scalar_fn(kY2, [](const RationalVector& p) { return p[0] * p[0]; });
  ProbeGrid g = ProbeGrid::custom({dirac(2, 0), dirac(2, 1), constant(2, 0), constant(2, 1)}, {q("1/2")});
  REQUIRE(check_gemod_morphism(square, g, GemodVariant::Total).unhealthy());
  Sampler s(2);
  for (int k = 0; k < 10; ++k) {
    g.predicates.push_back(s.predicate(2, 8));
    g.scalars.push_back(s.unit_rational(8));
    CHECK(check_gemod_morphism(square, g, GemodVariant::Total).unhealthy());
  }
}

TEST_CASE("finitary support") {
  const FinSet y3 = FinSet::range("Y", 3);
  const auto eval1 = BoolTransformer::from_function(y3, kX1, [](Mask m) { return has(m, 1) ? Mask{1} : Mask{0}; });
  CHECK(finitary_support(eval1, 0) == 0b010);
  CHECK(finitary_support(BoolTransformer::constant(y3, kX1, 1), 0) == 0);
  const auto join01 = BoolTransformer::from_function(y3, kX1, [](Mask m) { return (m & 0b011) ? Mask{1} : Mask{0}; });
  CHECK(finitary_support(join01, 0) == 0b011);
  CHECK(factors_through(join01, 0, 0b011));
  CHECK_FALSE(factors_through(join01, 0, 0b001));
  for (std::size_t n = 1; n <= 3; ++n)
    each_arrow(MonadKind::Powerset, n, n, [n](const KleisliArrow& r) {
      const BoolTransformer phi = wp_diamond(r);
      for (std::size_t x = 0; x < n; ++x) CHECK(finitary_support(phi, x) == std::get<Subset>(r.row(x)).elements);
    });
}

TEST_CASE("named conditions") {
  const BoolTransformer id = BoolTransformer::identity(kY2);
  for (std::string_view c : {"join", "meet", "monotone", "strict_meets", "finitary"})
    CHECK(check_condition(id, c, nullptr).healthy());
  const ProbeGrid grid = ProbeGrid::standard(2);
  const RationalTransformer rid = RationalTransformer::identity(kY2);
  for (std::string_view c : {"gemod_total", "emod", "regular_sublinear"})
    CHECK(check_condition(rid, c, &grid).healthy());
  CHECK_THROWS_AS(check_condition(id, "healthy", nullptr), InputError);
  CHECK_THROWS_AS(check_condition(rid, "join", &grid), InputError);
}
