// Truth-value algebras (modalities), the algebra <-> monad-map
// correspondence, and lifting-condition checks.

#ifndef WPB_MODALITIES_HPP
#define WPB_MODALITIES_HPP

#include "wpb/healthiness.hpp"
#include "wpb/monads.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wpb {

// ---------------------------------------------------------------------------
// T-values over Omega: the image T h (t) of a row under a valuation h.

struct ValueSet {
  std::vector<Rational> values;  // sorted, distinct
};

struct LiftedValueSet {
  std::vector<Rational> values;
  bool bottom = false;
};

/// Finite-support (sub)distribution on truth values, sorted by value.
struct ValueDistribution {
  std::vector<std::pair<Rational, Rational>> weights;  // (value, mass)
};

/// Up-closed family over the finite universe of values actually reached.
struct ValueUpFamily {
  std::vector<Rational> universe;
  std::vector<Mask> members;
};

struct ValuePolytope {
  std::vector<ValueDistribution> vertices;
};

using OmegaRow = std::variant<ValueSet, LiftedValueSet, ValueDistribution, ValueUpFamily, ValuePolytope>;

/// T h (t) for a row t over a carrier Z and a valuation h : Z -> Omega.
OmegaRow push_forward(MonadKind kind, const Row& t, const RationalVector& valuation);

/// Re-expresses an Omega-row as a row over the finite set of values it
/// mentions, together with the inclusion valuation.
struct ReifiedRow {
  FinSet carrier;
  Row row;
  RationalVector valuation;
};
ReifiedRow reify(MonadKind kind, const OmegaRow& omega);

// ---------------------------------------------------------------------------

/// An Eilenberg-Moore algebra T Omega -> Omega used as a modality.
struct Modality {
  std::string name;
  TruthCarrier carrier = TruthCarrier::Boolean;
  MonadKind monad = MonadKind::Powerset;
  std::optional<StructureClass> structure;
  std::function<Rational(const OmegaRow&)> evaluate;
  std::optional<Rational> parameter;  // r for tau_r
  /// For composite monads R * T: the inner T-modality and outer R-modality.
  std::optional<std::pair<std::string, std::string>> alternating;

  Rational operator()(const OmegaRow& t) const { return evaluate(t); }
};

/// Looks up a catalog modality: diamond, box, tau_r (parameter r in [0,1]),
/// total, partial, convex, dijkstra, game, demonic_prob. Also accepts
/// "tau_r:p/q".
Modality builtin_modality(std::string_view name, std::optional<Rational> r = std::nullopt);

inline constexpr std::string_view kModalityNames[] = {"diamond", "box",   "tau_r",    "total",       "partial",
                                                       "convex",  "dijkstra", "game", "demonic_prob"};

// ---------------------------------------------------------------------------
// Monad maps

/// A monad map, either into the continuation monad Omega^(Omega^(-))
/// ("evaluation form", components tau_X(t)(h)) or into another of the
/// finite monads ("monad form", components alpha_X(t) in T' X).
struct MonadMapSpec {
  std::string name;
  MonadKind source = MonadKind::Powerset;
  TruthCarrier carrier = TruthCarrier::Boolean;
  /// Class every component tau_X(t) : Omega^X -> Omega must belong to.
  std::optional<StructureClass> target_class;
  std::function<Rational(const FinSet&, const Row&, const RationalVector&)> evaluate;

  std::optional<MonadKind> target_monad;
  std::function<Row(const FinSet&, const Row&)> transform;

  bool evaluation_form() const { return !target_monad.has_value(); }
};

/// tau_X(t)(h) = tau(T h (t)).
MonadMapSpec algebra_to_monad_map(const Modality& tau);
/// tau(t) = tau_Omega(t)(id).
Modality monad_map_to_algebra(const MonadMapSpec& alpha, MonadKind monad, std::string name = {});

/// sigma : P -> [2^(-), 2]_join and sigma' : P -> [2^(-), 2]_meet.
MonadMapSpec sigma_map();
MonadMapSpec sigma_prime_map();
/// Support map D=1 -> P.
MonadMapSpec support_map();

/// Inverse of sigma_X: S = {x : xi(delta_x) = 1}; xi given as its truth
/// table over the predicates on X.
Mask sigma_inverse(const std::vector<bool>& xi, std::size_t n);
/// Inverse of sigma'_X: S = {x : xi(chi_{X \ {x}}) = 0}.
Mask sigma_prime_inverse(const std::vector<bool>& xi, std::size_t n);
/// Truth table of the component alpha_X(t) over all predicates on X.
std::vector<bool> component_table(const MonadMapSpec& alpha, const FinSet& x, const Row& t);

struct MonadMapLawOptions {
  std::uint64_t seed = 7;
  std::size_t samples = 100;   // sampled rows per carrier (non-enumerable monads)
  std::size_t grid_random = 6; // random probe valuations for rational carriers
  std::uint64_t bound = 1'000'000;
};

/// Naturality, unit and multiplication squares, plus membership of every
/// component in `target_class`.
Verdict check_monad_map_laws(const MonadMapSpec& alpha, const std::vector<FinSet>& carriers,
                             const MonadMapLawOptions& options = {});

// ---------------------------------------------------------------------------

struct AlgebraLawOptions {
  std::uint64_t seed = 11;
  std::size_t samples = 200;
  std::uint64_t bound = 100'000;  // enumerate T T Omega up to this size, sample beyond
};

/// tau . eta = id and tau . mu = tau . T tau.
Verdict check_algebra_laws(const Modality& tau, const AlgebraLawOptions& options = {});

struct LiftingOptions {
  std::uint64_t seed = 5;
  std::size_t samples = 200;       // rows of T(n) sampled for non-enumerable monads
  unsigned max_den = 16;
  std::size_t grid_random = 6;     // random probe predicates per n
};

/// For n <= n_max and t in T(n), the map tau_n(t) : Omega^n -> Omega is a
/// morphism of `cls`.
Verdict lifting_check(const Modality& tau, StructureClass cls, std::size_t n_max, const LiftingOptions& options = {});

/// The component tau_n(t) as a transformer Omega^n -> Omega^1.
PredicateTransformer component_transformer(const Modality& tau, const FinSet& n, const Row& t);

// ---------------------------------------------------------------------------

/// A finite algebra a : T A -> A for an enumerable monad.
struct FiniteAlgebra {
  MonadKind monad = MonadKind::Powerset;
  FinSet carrier;
  std::function<std::size_t(const Row&)> structure;
};

/// Free Powerset algebra on Y: subsets of Y under union.
FiniteAlgebra free_powerset_algebra(const FinSet& y);
/// The truth values {0,1} with the Boolean modality as structure map.
FiniteAlgebra truth_algebra(const Modality& tau);

/// All maps A -> Omega commuting with the structure maps, as masks over A.
std::vector<Mask> enumerate_algebra_morphisms(const FiniteAlgebra& a, const Modality& omega,
                                              std::uint64_t bound = 1u << 20);

}  // namespace wpb

#endif  // WPB_MODALITIES_HPP
