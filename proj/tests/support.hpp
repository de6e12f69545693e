// Small builders shared by the unit tests.

#ifndef WPB_TESTS_SUPPORT_HPP
#define WPB_TESTS_SUPPORT_HPP

#include "wpb/finite.hpp"
#include "wpb/monads.hpp"
#include "wpb/verdict.hpp"

#include <doctest.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace wpb::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline RationalVector vec(std::initializer_list<const char*> entries) {
  RationalVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const char* e : entries) v[i++] = parse_rational(e);
  return v;
}

inline FinSet set(std::string name, std::vector<std::string> labels) {
  return FinSet(std::move(name), std::move(labels));
}

/// Powerset arrow whose row x is the mask rows[x] over y.
inline KleisliArrow relation(const FinSet& x, const FinSet& y, const std::vector<Mask>& rows) {
  std::vector<Row> rs;
  for (Mask m : rows) rs.emplace_back(Subset{m});
  return KleisliArrow(MonadKind::Powerset, x, y, rs);
}

inline KleisliArrow weights_arrow(MonadKind kind, const FinSet& x, const FinSet& y,
                                  const std::vector<RationalVector>& rows) {
  std::vector<Row> rs;
  for (const auto& r : rows) rs.emplace_back(Weights{r});
  return KleisliArrow(kind, x, y, rs);
}

/// An unhealthy verdict must carry a witness that re-evaluates as a strict
/// violation.
inline void require_sound(const Verdict& v) {
  if (!v.unhealthy()) return;
  REQUIRE(v.witness.has_value());
  CHECK(witness_reproduces(v));
}

}  // namespace wpb::test

#endif  // WPB_TESTS_SUPPORT_HPP
