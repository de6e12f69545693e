#include "support.hpp"

#include "wpb/finite.hpp"

#include <set>

using namespace wpb;
using wpb::test::q;

TEST_CASE("enumerate_subsets follows the little-endian bit order") {
  CHECK(enumerate_subsets(FinSet("E", {})) == std::vector<Mask>{0});
  CHECK(enumerate_subsets(FinSet("A", {"a"})) == std::vector<Mask>{0, 1});
  // [∅, {a}, {b}, {a,b}]
  const FinSet ab("X", {"a", "b"});
  CHECK(enumerate_subsets(ab) == std::vector<Mask>{0b00, 0b01, 0b10, 0b11});
  for (Mask m : enumerate_subsets(ab)) CHECK(enumerate_subsets(ab)[m] == m);
}

TEST_CASE("enumerate_predicates counts 2^|Y| and refuses rational carriers") {
  CHECK(enumerate_predicates(FinSet("Y", {"y"})).size() == 2);
  CHECK(enumerate_predicates(FinSet("E", {})).size() == 1);
  CHECK(enumerate_predicates(FinSet::range("Y", 3)).size() == 8);
  CHECK_THROWS_AS(enumerate_predicates(FinSet::range("Y", 2), TruthCarrier::RationalUnit), std::invalid_argument);
}

TEST_CASE("transformer counts match (2^|X|)^(2^|Y|)") {
  CHECK(transformer_count(1, 1) == 4);
  CHECK(transformer_count(2, 2) == 256);
  CHECK(transformer_count(3, 3) == 16'777'216);
  CHECK(TransformerStream(FinSet::range("Y", 2), FinSet::range("X", 2)).count() == 256);
}

TEST_CASE("the transformer stream is deterministic and index round-trips") {
  const TransformerStream s(FinSet::range("Y", 2), FinSet::range("X", 1));
  std::vector<std::vector<Mask>> first, second;
  s.for_each(0, s.count(), [&](std::uint64_t, const std::vector<Mask>& t) {
    first.push_back(t);
    return true;
  });
  s.for_each(0, s.count(), [&](std::uint64_t i, const std::vector<Mask>& t) {
    second.push_back(t);
    CHECK(s.encode(t) == i);
    std::vector<Mask> decoded;
    s.decode(i, decoded);
    CHECK(decoded == t);
    return true;
  });
  CHECK(first == second);
  CHECK(std::set<std::vector<Mask>>(first.begin(), first.end()).size() == 16);
}

TEST_CASE("partitioned ranges cover the stream exactly once") {
  const TransformerStream s(FinSet::range("Y", 2), FinSet::range("X", 2));
  std::vector<int> seen(s.count(), 0);
  for (std::uint64_t b = 0; b < s.count(); b += 37)
    s.for_each(b, std::min<std::uint64_t>(b + 37, s.count()), [&](std::uint64_t i, const std::vector<Mask>&) {
      ++seen[i];
      return true;
    });
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("the size guard refuses oversized streams") {
  CHECK_THROWS_AS(TransformerStream(FinSet::range("Y", 3), FinSet::range("X", 3), 1000), SizeGuardError);
  CHECK_NOTHROW(TransformerStream(FinSet::range("Y", 3), FinSet::range("X", 3)));
}

TEST_CASE("rationals are exact and reduced") {
  CHECK(q("1/2") + q("1/3") == q("5/6"));
  CHECK(to_string(q("2/4")) == "1/2");
  CHECK(to_string(q("3")) == "3");
  CHECK(q("-1/3") < 0);
  try {
    (void)parse_rational("1/0");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.code() == "zero-denominator");
  }
  try {
    (void)parse_rational("one half");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.code() == "malformed-rational");
  }
}

TEST_CASE("predicate helpers") {
  CHECK(bitstring(0b01, 2) == "10");
  CHECK(parse_bitstring("10", 2) == 0b01);
  CHECK(to_mask(to_vector(0b101, 3)) == 0b101);
  CHECK(equal(dirac(3, 1), wpb::test::vec({"0", "1", "0"})));
  CHECK(leq(constant(2, q("1/4")), constant(2, q("1/2"))));
  CHECK_FALSE(in_unit_cube(wpb::test::vec({"1/2", "3/2"})));
}

TEST_CASE("FinSet rejects duplicates and unknown labels") {
  CHECK_THROWS_AS(FinSet("X", {"a", "a"}), InputError);
  const FinSet x("X", {"a", "b"});
  CHECK(x.index_of("b") == 1);
  CHECK_THROWS_AS((void)x.index_of("c"), InputError);
}

TEST_CASE("seeded samplers reproduce") {
  Sampler a(42), b(42);
  for (int i = 0; i < 20; ++i) CHECK(equal(a.predicate(3, 8), b.predicate(3, 8)));
  Sampler c(3);
  for (int i = 0; i < 50; ++i) {
    const RationalVector d = c.subdistribution(3, 16, true);
    CHECK(d.sum() == 1);
    const RationalVector s = c.subdistribution(3, 16, false);
    CHECK(s.sum() <= 1);
    CHECK(in_unit_cube(s));
  }
}
