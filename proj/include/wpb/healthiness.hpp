// Healthiness deciders. Each returns a Verdict; unhealthy verdicts carry a
// concrete, re-checkable law instance.

#ifndef WPB_HEALTHINESS_HPP
#define WPB_HEALTHINESS_HPP

#include "wpb/transformer.hpp"
#include "wpb/verdict.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace wpb {

/// Categories of truth-value structures whose morphisms a transformer (or a
/// component of a monad map) must be.
enum class StructureClass {
  JoinLattice,            // CL_∨: bottom and binary joins
  MeetLattice,            // CL_∧: top and binary meets
  Poset,                  // Pos: monotone
  StrictMeetSemilattice,  // StrictCL_∧⁺: 0 and binary (nonempty) meets
  GEMod,                  // 0, defined sums, scalar multiplication
  GEModDual,              // the same with zero 1, x ⊻ y = x + y - 1, r∘x = rx + (1-r)
  EMod,                   // GEMod plus the unit 1
  EModSublinear,          // subadditive, scaling, translation
};

std::string_view to_string(StructureClass c);
StructureClass parse_structure_class(std::string_view name);
bool is_boolean_class(StructureClass c);

// ---------------------------------------------------------------------------
// Probe grids

struct GridTables;

/// Finite set of rational predicates and scalars standing in for [0,1]^Y.
struct ProbeGrid {
  std::vector<RationalVector> predicates;
  std::vector<Rational> scalars;
  std::uint64_t seed = 0;
  /// Defined sums and scalar images of grid members, built on first use and
  /// shared by copies. Rebuilt if the member counts change.
  mutable std::shared_ptr<const GridTables> tables;

  /// Diracs, constants 0 and 1, `random_count` seeded predicates with
  /// denominators <= max_den, then every defined pairwise sum of those.
  static ProbeGrid standard(std::size_t n, std::uint64_t seed = 0, std::size_t random_count = 50,
                            unsigned max_den = 8);
  /// Exactly the given predicates and scalars; no completion.
  static ProbeGrid custom(std::vector<RationalVector> predicates, std::vector<Rational> scalars);

  /// Contains every Dirac predicate and both constants.
  bool meets_minimum(std::size_t n) const;
};

std::vector<Rational> default_scalars();

// ---------------------------------------------------------------------------
// Boolean conditions (dense tables)

enum class BoolLaw { Bottom, Top, BinaryJoin, BinaryMeet, Monotone };

struct BoolLawViolation {
  BoolLaw law;
  Mask f = 0;
  Mask g = 0;
};

std::optional<BoolLawViolation> find_join_violation(const BoolTransformer& phi);
std::optional<BoolLawViolation> find_meet_violation(const BoolTransformer& phi);
std::optional<BoolLawViolation> find_monotone_violation(const BoolTransformer& phi);
std::optional<BoolLawViolation> find_strict_meets_violation(const BoolTransformer& phi);

Verdict check_join_preserving(const BoolTransformer& phi);
Verdict check_meet_preserving(const BoolTransformer& phi);
Verdict check_monotone(const BoolTransformer& phi);
Verdict check_strict_nonempty_meets(const BoolTransformer& phi);

/// Minimal Y' ⊆ Y such that h ↦ phi(h)(x) factors through restriction to Y'.
Mask finitary_support(const BoolTransformer& phi, std::size_t x);
/// Factorisation check backing finitary_support.
bool factors_through(const BoolTransformer& phi, std::size_t x, Mask support);

// ---------------------------------------------------------------------------
// Rational conditions (checked on a probe grid)

enum class GemodVariant { Total, Partial };

Verdict check_gemod_morphism(const RationalTransformer& phi, const ProbeGrid& grid, GemodVariant variant);
Verdict check_emod_morphism(const RationalTransformer& phi, const ProbeGrid& grid);
Verdict check_regular_sublinear(const RationalTransformer& phi, const ProbeGrid& grid);

// ---------------------------------------------------------------------------

Verdict check_structure(const BoolTransformer& phi, StructureClass c);
Verdict check_structure(const RationalTransformer& phi, StructureClass c, const ProbeGrid& grid);

/// Named condition as used on the command line: join | meet | monotone |
/// strict_meets | gemod_total | gemod_partial | emod | regular_sublinear |
/// finitary.
Verdict check_condition(const PredicateTransformer& phi, std::string_view condition, const ProbeGrid* grid);

inline constexpr std::string_view kConditionNames[] = {
    "join", "meet", "monotone", "strict_meets", "gemod_total", "gemod_partial", "emod", "regular_sublinear",
    "finitary"};

}  // namespace wpb

#endif  // WPB_HEALTHINESS_HPP
