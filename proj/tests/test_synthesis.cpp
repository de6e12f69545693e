#include "support.hpp"

#include "wpb/healthiness.hpp"
#include "wpb/modalities.hpp"
#include "wpb/semantics.hpp"
#include "wpb/synthesis.hpp"

#include <algorithm>

using namespace wpb;
using wpb::test::q;
using wpb::test::vec;

namespace {

const FinSet kX1("X", {"x"});
const FinSet kY2("Y", {"y0", "y1"});

RationalTransformer scalar_fn(const FinSet& y, std::function<Rational(const RationalVector&)> fn) {
  return RationalTransformer::pointwise(y, kX1, [fn](const RationalVector& p, std::size_t) { return fn(p); });
}

BoolTransformer bool_fn(const FinSet& y, std::function<bool(Mask)> fn) {
  return BoolTransformer::from_function(y, kX1, [fn](Mask m) { return fn(m) ? Mask{1} : Mask{0}; });
}

Rational median3(const RationalVector& p) {
  std::vector<Rational> v{p[0], p[1], p[2]};
  std::sort(v.begin(), v.end());
  return v[1];
}

}  // namespace

TEST_CASE("relations from join- and meet-preserving maps") {
  const auto id = BoolTransformer::identity(kY2);
  CHECK(*synth_relation(id, RelationModality::Diamond).arrow == wpb::test::relation(kY2, kY2, {0b01, 0b10}));
  CHECK(*synth_relation(id, RelationModality::Box).arrow == wpb::test::relation(kY2, kY2, {0b01, 0b10}));
  CHECK(*synth_relation(BoolTransformer::constant(kY2, kX1, 0), RelationModality::Diamond).arrow ==
        wpb::test::relation(kX1, kY2, {0b00}));

  const auto join = bool_fn(kY2, [](Mask m) { return m != 0; });
  const SynthesisResult r = synth_relation(join, RelationModality::Diamond);
  CHECK(r.residual.healthy());
  CHECK(*r.arrow == wpb::test::relation(kX1, kY2, {0b11}));
  // it is the only relation with this transformer
  std::size_t matches = 0;
  for_each_arrow(MonadKind::Powerset, kX1, kY2, [&](const KleisliArrow& f) {
    matches += wp_diamond(f) == join;
    return true;
  });
  CHECK(matches == 1);

  const auto meet = bool_fn(kY2, [](Mask m) { return m == 0b11; });
  CHECK(*synth_relation(meet, RelationModality::Box).arrow == wpb::test::relation(kX1, kY2, {0b11}));
}

TEST_CASE("relation synthesis rejects unhealthy maps with the failing verdict") {
  try {
    (void)synth_relation(BoolTransformer::constant(kY2, kX1, 1), RelationModality::Diamond);
    FAIL("expected SynthesisError");
  } catch (const SynthesisError& e) {
    CHECK(e.verdict().unhealthy());
    wpb::test::require_sound(e.verdict());
  }
}

TEST_CASE("subdistributions from GEMod morphisms") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  const auto lin = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2 + p[1] / 4; });
  const SynthesisResult r = synth_subdist(lin, GemodVariant::Total, grid);
  REQUIRE(r.arrow);
  CHECK(r.residual.healthy());
  CHECK(*r.arrow == wpb::test::weights_arrow(MonadKind::SubDist, kX1, kY2, {vec({"1/2", "1/4"})}));

  const SynthesisResult id = synth_subdist(RationalTransformer::identity(kY2), GemodVariant::Total, grid);
  CHECK(*id.arrow == unit_arrow(MonadKind::SubDist, kY2));

  const auto aff = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2 + Rational(1, 2); });
  const SynthesisResult pr = synth_subdist(aff, GemodVariant::Partial, grid);
  REQUIRE(pr.arrow);
  CHECK(*pr.arrow == wpb::test::weights_arrow(MonadKind::SubDist, kX1, kY2, {vec({"1/2", "0"})}));
  CHECK(mass(pr.arrow->row(0)) == q("1/2"));
}

TEST_CASE("distributions from effect module morphisms") {
  const ProbeGrid grid = ProbeGrid::standard(2);
  CHECK(*synth_dist(RationalTransformer::identity(kY2), grid).arrow == unit_arrow(MonadKind::Dist, kY2));
  const auto avg = scalar_fn(kY2, [](const RationalVector& p) { return (p[0] + p[1]) / 2; });
  CHECK(*synth_dist(avg, grid).arrow == wpb::test::weights_arrow(MonadKind::Dist, kX1, kY2, {vec({"1/2", "1/2"})}));
  const auto half = scalar_fn(kY2, [](const RationalVector& p) { return p[0] / 2; });
  CHECK_THROWS_AS(synth_dist(half, grid), SynthesisError);
}

TEST_CASE("up-closed families from monotone maps") {
  const SynthesisResult id = synth_upfamily(BoolTransformer::identity(kY2));
  CHECK(*id.arrow == KleisliArrow(MonadKind::UpPowerset, kY2, kY2,
                                  std::vector<Row>{UpFamily{{0b01, 0b11}}, UpFamily{{0b10, 0b11}}}));
  const SynthesisResult top = synth_upfamily(BoolTransformer::constant(kY2, kX1, 1));
  CHECK(std::get<UpFamily>(top.arrow->row(0)).members == std::vector<Mask>{0, 1, 2, 3});
  const SynthesisResult both = synth_upfamily(bool_fn(kY2, [](Mask m) { return m == 0b11; }));
  CHECK(std::get<UpFamily>(both.arrow->row(0)).members == std::vector<Mask>{0b11});
}

TEST_CASE("Dijkstra computations from strict meet-preserving maps") {
  const auto at1 = bool_fn(kY2, [](Mask m) { return has(m, 1); });
  CHECK(std::get<LiftedSubset>(synth_dijkstra(at1).arrow->row(0)).elements == 0b10);
  const SynthesisResult zero = synth_dijkstra(BoolTransformer::constant(kY2, kX1, 0));
  const auto row = std::get<LiftedSubset>(zero.arrow->row(0));
  CHECK(row.bottom);
  CHECK(row.elements == 0);
  CHECK(std::find(zero.normalization.begin(), zero.normalization.end(), "bottom-absorption") !=
        zero.normalization.end());
  const auto both =
      std::get<LiftedSubset>(synth_dijkstra(bool_fn(kY2, [](Mask m) { return m == 0b11; })).arrow->row(0));
  CHECK(both.elements == 0b11);
  CHECK_FALSE(both.bottom);
  const SynthesisResult empty = synth_dijkstra(BoolTransformer::constant(FinSet("E", {}), kX1, 0));
  REQUIRE(empty.arrow);
  CHECK(rows_equal(empty.arrow->row(0), Row{LiftedSubset{0, true}}));
  CHECK(empty.residual.healthy());
}

TEST_CASE("polytopes from regular sublinear maps") {
  const FinSet y3 = FinSet::range("Y", 3, "y");
  const ProbeGrid g2 = ProbeGrid::standard(2), g3 = ProbeGrid::standard(3);

  const SynthesisResult pin = synth_polytope(scalar_fn(kY2, [](const RationalVector& p) { return p[1]; }), g2);
  REQUIRE(pin.arrow);
  CHECK(pin.residual.healthy());
  CHECK(rows_equal(pin.arrow->row(0), Row{DistributionPolytope{{vec({"0", "1"})}}}));
  CHECK(pin.halfspaces.size() == 1);
  CHECK(pin.halfspaces[0].size() == g2.predicates.size());

  const SynthesisResult seg =
      synth_polytope(scalar_fn(kY2, [](const RationalVector& p) { return std::min(p[0], p[1]); }), g2);
  REQUIRE(seg.arrow);
  CHECK(seg.residual.healthy());
  CHECK(rows_equal(seg.arrow->row(0), Row{DistributionPolytope{{vec({"1", "0"}), vec({"0", "1"})}}}));

  const SynthesisResult all = synth_polytope(scalar_fn(y3, [](const RationalVector& p) { return p.minCoeff(); }), g3);
  REQUIRE(all.arrow);
  CHECK(all.residual.healthy());
  CHECK(rows_equal(all.arrow->row(0), Row{DistributionPolytope{{dirac(3, 0), dirac(3, 1), dirac(3, 2)}}}));
}

TEST_CASE("the median passes a sparse grid but has no certifiable polytope") {
  // The grid holds the Diracs, the constants and the pair indicators. The
  // median satisfies every law on it, yet the cuts mu_i + mu_j >= 1 leave
  // no distribution. Off the grid the median is not superadditive.
  const FinSet y3 = FinSet::range("Y", 3, "y");
  const ProbeGrid grid = ProbeGrid::standard(3, 0, 0);
  const auto med = scalar_fn(y3, median3);
  REQUIRE(check_regular_sublinear(med, grid).healthy());
  const SynthesisResult r = synth_polytope(med, grid);
  CHECK_FALSE(r.arrow);
  CHECK(r.residual.status == Status::Inconclusive);
  CHECK(r.residual.note.find("empty") != std::string::npos);
  CHECK(median3(vec({"1/2", "1/2", "0"})) + median3(vec({"0", "1/2", "1/2"})) > median3(vec({"1/2", "1", "1/2"})));
}

TEST_CASE("round trips") {
  for (std::size_t n = 0; n <= 3; ++n)
    for_each_arrow(MonadKind::Powerset, FinSet::range("X", n), FinSet::range("Y", n), [](const KleisliArrow& f) {
      CHECK(roundtrip_verify(f, "may").healthy());
      CHECK(roundtrip_verify(f, "must").healthy());
      return true;
    });
  Sampler s(5);
  const FinSet x = FinSet::range("X", 2), y = FinSet::range("Y", 2);
  for (int k = 0; k < 20; ++k) {
    CHECK(roundtrip_verify(random_arrow(MonadKind::SubDist, x, y, s), "subdist_total").healthy());
    CHECK(roundtrip_verify(random_arrow(MonadKind::SubDist, x, y, s), "subdist_partial").healthy());
    CHECK(roundtrip_verify(random_arrow(MonadKind::Dist, x, y, s), "dist_convex").healthy());
    CHECK(roundtrip_verify(random_arrow(MonadKind::CvDist, x, y, s), "cv_sublinear").healthy());
  }
}

TEST_CASE("a row mixing bottom and a state collapses to bottom") {
  const KleisliArrow f(MonadKind::NonemptyPowersetLift, kX1, kY2, std::vector<Row>{LiftedSubset{0b01, true}});
  const KleisliArrow n = normalize(f);
  CHECK(rows_equal(n.row(0), Row{LiftedSubset{0, true}}));
  CHECK_FALSE(n == f);
  CHECK(roundtrip_verify(f, "dijkstra").healthy());
  CHECK(std::get<BoolTransformer>(pt_alternating(f, "dijkstra")) ==
        std::get<BoolTransformer>(pt_alternating(n, "dijkstra")));
}

TEST_CASE("instance catalog") {
  for (std::string_view id : kInstanceNames) CHECK(instance_info(id).id == id);
  try {
    (void)instance_info("theorem_9");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.code() == "unknown-theorem");
  }
  CHECK_THROWS_AS(roundtrip_verify(wpb::test::relation(kX1, kY2, {1}), "subdist_total"), InputError);
}

TEST_CASE("table kernels agree with the arrow-level operations") {
  const FinSet x = FinSet::range("X", 2), y = FinSet::range("Y", 2);
  for_each_arrow(MonadKind::Powerset, x, y, [&](const KleisliArrow& f) {
    std::vector<Mask> rows;
    for (const Row& r : f.rows()) rows.push_back(std::get<Subset>(r).elements);
    std::vector<Mask> dia, box;
    wp_diamond_table(rows, 2, dia);
    wp_box_table(rows, 2, box);
    CHECK(dia == wp_diamond(f).table);
    CHECK(box == wp_box(f).table);
    CHECK(relation_rows_diamond(dia, 2, 2) == rows);
    CHECK(relation_rows_box(box, 2, 2) == rows);
    return true;
  });
}
