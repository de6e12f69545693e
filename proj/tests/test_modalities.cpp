#include "support.hpp"

#include "wpb/healthiness.hpp"
#include "wpb/modalities.hpp"

#include <algorithm>

using namespace wpb;
using wpb::test::q;
using wpb::test::vec;

namespace {

constexpr std::string_view kCatalog[] = {"diamond", "box",      "total", "partial",     "tau_r:1/3",
                                         "convex",  "dijkstra", "game",  "demonic_prob"};

// Valuations X -> Omega used to probe monad-map components.
std::vector<RationalVector> valuations(const Modality& tau, std::size_t n, Sampler& s) {
  std::vector<RationalVector> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) out.push_back(to_vector(m, n));
  if (tau.carrier == TruthCarrier::RationalUnit)
    for (int k = 0; k < 6; ++k) out.push_back(s.predicate(n, 8));
  return out;
}

std::vector<Row> rows_for(MonadKind k, std::size_t n, Sampler& s) {
  if (is_enumerable(k)) return enumerate_rows(k, n);
  std::vector<Row> out;
  for (int i = 0; i < 20; ++i) out.push_back(random_row(k, n, s));
  return out;
}

}  // namespace

TEST_CASE("catalog modalities evaluate their defining formulas") {
  const Modality t0 = builtin_modality("tau_r", q("0"));
  const Modality t1 = builtin_modality("tau_r", q("1"));
  const ValueDistribution zero{};
  CHECK(t0(zero) == 0);
  CHECK(t1(zero) == 1);
  for (const char* r : {"0", "1/3", "1/2", "1"}) {
    const Modality t = builtin_modality("tau_r", q(r));
    for (const char* v : {"0", "1/4", "1"}) CHECK(t(ValueDistribution{{{q(v), q("1")}}}) == q(v));
  }
  // tau_r(p) = sum v p(v) + r (1 - mass)
  CHECK(builtin_modality("tau_r:1/3")(ValueDistribution{{{q("1/2"), q("1/2")}}}) == q("1/4") + q("1/6"));
  CHECK(builtin_modality("diamond")(ValueSet{{q("0"), q("1")}}) == 1);
  CHECK(builtin_modality("box")(ValueSet{{q("0"), q("1")}}) == 0);
  CHECK(builtin_modality("box")(ValueSet{}) == 1);
}

TEST_CASE("catalog structure classes") {
  CHECK(builtin_modality("diamond").structure == StructureClass::JoinLattice);
  CHECK(builtin_modality("box").structure == StructureClass::MeetLattice);
  CHECK(builtin_modality("total").structure == StructureClass::GEMod);
  CHECK(builtin_modality("partial").structure == StructureClass::GEModDual);
  CHECK(builtin_modality("convex").structure == StructureClass::EMod);
  CHECK(builtin_modality("dijkstra").structure == StructureClass::StrictMeetSemilattice);
  CHECK(builtin_modality("game").structure == StructureClass::Poset);
  CHECK(builtin_modality("demonic_prob").structure == StructureClass::EModSublinear);
}

TEST_CASE("catalog lookup errors") {
  auto code_of = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const InputError& e) {
      return e.code();
    }
    return "";
  };
  CHECK(code_of([] { (void)builtin_modality("angelic"); }) == "unknown-modality");
  CHECK(code_of([] { (void)builtin_modality("tau_r"); }) == "missing-parameter");
  CHECK(code_of([] { (void)builtin_modality("tau_r", q("3/2")); }) == "parameter-out-of-range");
  CHECK(code_of([] { (void)builtin_modality("tau_r:-1/2"); }) == "parameter-out-of-range");
}

TEST_CASE("algebra to monad map: diamond gives sigma and box gives sigma prime") {
  const MonadMapSpec from_diamond = algebra_to_monad_map(builtin_modality("diamond"));
  const MonadMapSpec from_box = algebra_to_monad_map(builtin_modality("box"));
  const MonadMapSpec sigma = sigma_map(), sigma_p = sigma_prime_map();
  for (std::size_t n = 0; n <= 3; ++n) {
    const FinSet x = FinSet::range("X", n);
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      const Row t{Subset{s}};
      CHECK(component_table(from_diamond, x, t) == component_table(sigma, x, t));
      CHECK(component_table(from_box, x, t) == component_table(sigma_p, x, t));
    }
  }
}

TEST_CASE("monad map to algebra recovers join and meet on 2") {
  const Modality join = monad_map_to_algebra(sigma_map(), MonadKind::Powerset);
  const Modality meet = monad_map_to_algebra(sigma_prime_map(), MonadKind::Powerset);
  for (const auto& vs : {ValueSet{}, ValueSet{{q("0")}}, ValueSet{{q("1")}}, ValueSet{{q("0"), q("1")}}}) {
    CHECK(join(vs) == builtin_modality("diamond")(vs));
    CHECK(meet(vs) == builtin_modality("box")(vs));
  }
}

TEST_CASE("algebra to monad map and back is the identity on the catalog") {
  Sampler s(21);
  for (std::string_view name : kCatalog) {
    CAPTURE(name);
    const Modality tau = builtin_modality(name);
    const Modality back = monad_map_to_algebra(algebra_to_monad_map(tau), tau.monad);
    const MonadMapSpec alpha = algebra_to_monad_map(tau);
    for (std::size_t n = 1; n <= 2; ++n) {
      const FinSet x = FinSet::range("X", n);
      for (const Row& t : rows_for(tau.monad, n, s))
        for (const RationalVector& h : valuations(tau, n, s)) {
          const OmegaRow image = push_forward(tau.monad, t, h);
          CHECK(back(image) == tau(image));
          CHECK(alpha.evaluate(x, t, h) == tau(image));
        }
      // unit axiom: tau_X(eta(x))(h) = h(x)
      for (std::size_t e = 0; e < n; ++e)
        for (const RationalVector& h : valuations(tau, n, s))
          CHECK(alpha.evaluate(x, unit(tau.monad, x, e), h) == h[static_cast<Eigen::Index>(e)]);
    }
  }
}

TEST_CASE("algebra laws hold across the catalog") {
  for (std::string_view name : kCatalog) {
    CAPTURE(name);
    const Verdict v = check_algebra_laws(builtin_modality(name));
    CHECK(v.healthy());
  }
  for (const char* r : {"0", "1/2", "1"}) {
    AlgebraLawOptions opts;
    opts.samples = 200;
    CHECK(check_algebra_laws(builtin_modality("tau_r", q(r)), opts).healthy());
  }
}

TEST_CASE("a sum-of-squares algebra map breaks the algebra laws") {
  Modality bad = builtin_modality("convex");
  bad.name = "sum_of_squares";
  bad.evaluate = [](const OmegaRow& row) {
    Rational acc = 0;
    for (const auto& [value, mass] : std::get<ValueDistribution>(row).weights) acc += mass * mass;
    return acc;
  };
  const Verdict v = check_algebra_laws(bad);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
}

TEST_CASE("sigma and sigma prime are bijective up to three elements") {
  for (std::size_t n = 0; n <= 3; ++n) {
    const FinSet x = FinSet::range("X", n);
    const std::size_t preds = std::size_t{1} << n;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      CHECK(sigma_inverse(component_table(sigma_map(), x, Subset{s}), n) == s);
      CHECK(sigma_prime_inverse(component_table(sigma_prime_map(), x, Subset{s}), n) == s);
    }
    // every join-preserving xi is sigma of its inverse; dually for meets
    std::size_t joins = 0, meets = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << preds); ++code) {
      std::vector<bool> xi(preds);
      for (std::size_t f = 0; f < preds; ++f) xi[f] = (code >> f) & 1U;
      bool join_ok = !xi[0], meet_ok = xi[preds - 1];
      for (std::size_t f = 0; f < preds; ++f)
        for (std::size_t g = 0; g < preds; ++g) {
          join_ok = join_ok && xi[f | g] == (xi[f] || xi[g]);
          meet_ok = meet_ok && xi[f & g] == (xi[f] && xi[g]);
        }
      if (join_ok) {
        ++joins;
        CHECK(component_table(sigma_map(), x, Subset{sigma_inverse(xi, n)}) == xi);
      }
      if (meet_ok) {
        ++meets;
        CHECK(component_table(sigma_prime_map(), x, Subset{sigma_prime_inverse(xi, n)}) == xi);
      }
    }
    CHECK(joins == preds);
    CHECK(meets == preds);
  }
}

TEST_CASE("monad map laws for sigma, sigma prime and support") {
  std::vector<FinSet> carriers;
  for (std::size_t n = 0; n <= 3; ++n) carriers.push_back(FinSet::range("C" + std::to_string(n), n));
  CHECK(check_monad_map_laws(sigma_map(), carriers).healthy());
  CHECK(check_monad_map_laws(sigma_prime_map(), carriers).healthy());
  const std::vector<FinSet> small(carriers.begin(), carriers.begin() + 3);
  CHECK(check_monad_map_laws(support_map(), small).healthy());
}

TEST_CASE("sigma with meets in place of joins fails against the join target") {
  MonadMapSpec bad = sigma_map();
  bad.name = "sigma_meet";
  bad.evaluate = [](const FinSet&, const Row& t, const RationalVector& h) {
    for (std::size_t x : members(std::get<Subset>(t).elements))
      if (h[static_cast<Eigen::Index>(x)] == 0) return Rational(0);
    return Rational(1);
  };
  const Verdict v = check_monad_map_laws(bad, {FinSet::range("A", 1), FinSet::range("B", 2)});
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
}

TEST_CASE("lifting conditions") {
  CHECK(lifting_check(builtin_modality("diamond"), StructureClass::JoinLattice, 3).healthy());
  CHECK(lifting_check(builtin_modality("box"), StructureClass::MeetLattice, 3).healthy());
  CHECK(lifting_check(builtin_modality("total"), StructureClass::GEMod, 3).healthy());
  CHECK(lifting_check(builtin_modality("partial"), StructureClass::GEModDual, 2).healthy());
  CHECK(lifting_check(builtin_modality("convex"), StructureClass::EMod, 2).healthy());
}

TEST_CASE("join against the meet class fails with a reproducible witness") {
  const Verdict v = lifting_check(builtin_modality("diamond"), StructureClass::MeetLattice, 2);
  REQUIRE(v.unhealthy());
  wpb::test::require_sound(v);
  // the instance t = {a,b}, f = (1,0), g = (0,1): join(f and g) = 0 but
  // join f and join g = 1
  const FinSet two("T", {"a", "b"});
  const auto phi = std::get<BoolTransformer>(component_transformer(builtin_modality("diamond"), two, Subset{0b11}));
  CHECK(phi(0b01 & 0b10) == 0);
  CHECK((phi(0b01) & phi(0b10)) == 1);
  CHECK(check_meet_preserving(phi).unhealthy());
}

TEST_CASE("algebra morphisms out of free Powerset algebras") {
  const Modality join = builtin_modality("diamond");
  CHECK(enumerate_algebra_morphisms(free_powerset_algebra(FinSet("Y", {"y"})), join).size() == 2);
  CHECK(enumerate_algebra_morphisms(free_powerset_algebra(FinSet("Y", {"y0", "y1"})), join).size() == 4);
  const auto self = enumerate_algebra_morphisms(truth_algebra(join), join);
  CHECK(std::find(self.begin(), self.end(), Mask{0b10}) != self.end());
}
