// Predicate-transformer semantics of Kleisli arrows.

#ifndef WPB_SEMANTICS_HPP
#define WPB_SEMANTICS_HPP

#include "wpb/healthiness.hpp"
#include "wpb/modalities.hpp"
#include "wpb/monads.hpp"
#include "wpb/transformer.hpp"

namespace wpb {

/// wp_◇(R)(g) = {x : some y in R(x) satisfies g}.
BoolTransformer wp_diamond(const KleisliArrow& relation);
/// wp_□(R)(g) = {x : every y in R(x) satisfies g}.
BoolTransformer wp_box(const KleisliArrow& relation);

/// pt^tau(f)(p)(x) = tau(T p (f(x))). The arrow's monad must match tau's.
PredicateTransformer pt_modality(const KleisliArrow& f, const Modality& tau);

/// Semantics of a composite computation (P+ * L, Up * P, Cv * D) under its
/// alternating modality, named by the pair "inner/outer" or by the modality
/// name itself ("dijkstra", "game", "demonic_prob").
PredicateTransformer pt_alternating(const KleisliArrow& f, std::string_view modality);

/// Equality of two transformers: exact for Boolean ones, on `grid` for
/// rational ones. A mismatch yields a reproducible witness.
Verdict transformers_agree(const PredicateTransformer& a, const PredicateTransformer& b, const ProbeGrid* grid,
                           std::string law);

/// P(g ⊙ f) = P(f) ∘ P(g) for f : X -> T Y, g : Y -> T Z, where ⊙ is
/// `compose` (Kleisli composition by default).
Verdict check_functoriality(const Modality& tau, const KleisliArrow& f, const KleisliArrow& g,
                            const ProbeGrid* grid = nullptr, const ComposeFn& compose = kleisli_compose);

/// P(eta_X) = id.
Verdict check_unit_preservation(const Modality& tau, const FinSet& x, const ProbeGrid* grid = nullptr);

}  // namespace wpb

#endif  // WPB_SEMANTICS_HPP
