// Predicate transformers Omega^Y -> Omega^X.

#ifndef WPB_TRANSFORMER_HPP
#define WPB_TRANSFORMER_HPP

#include "wpb/finite.hpp"
#include "wpb/monads.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wpb {

/// Dense Boolean transformer 2^Y -> 2^X: table[k] is the image of the
/// predicate with index k (bit i of k = truth of element i of Y).
struct BoolTransformer {
  FinSet source;  // Y
  FinSet target;  // X
  std::vector<Mask> table;

  Mask operator()(Mask predicate) const { return table[predicate]; }

  static BoolTransformer identity(const FinSet& y);
  static BoolTransformer constant(const FinSet& y, const FinSet& x, Mask value);
  static BoolTransformer from_function(const FinSet& y, const FinSet& x, const std::function<Mask(Mask)>& fn);

  friend bool operator==(const BoolTransformer& a, const BoolTransformer& b) {
    return a.source == b.source && a.target == b.target && a.table == b.table;
  }
};

/// Composite (phi . psi)(h) = phi(psi(h)).
BoolTransformer compose(const BoolTransformer& phi, const BoolTransformer& psi);

using RationalEval = std::function<RationalVector(const RationalVector&)>;

/// Rational transformer [0,1]^Y -> [0,1]^X given by an evaluation rule,
/// optionally backed by the computation that defines it.
struct RationalTransformer {
  FinSet source;  // Y
  FinSet target;  // X
  RationalEval eval;
  std::shared_ptr<const KleisliArrow> defining;
  std::string description;

  RationalVector operator()(const RationalVector& p) const { return eval(p); }

  static RationalTransformer identity(const FinSet& y);
  /// Coordinatewise rule: value(p, x).
  static RationalTransformer pointwise(const FinSet& y, const FinSet& x,
                                       std::function<Rational(const RationalVector&, std::size_t)> value,
                                       std::string description = {});
};

RationalTransformer compose(const RationalTransformer& phi, const RationalTransformer& psi);

using PredicateTransformer = std::variant<BoolTransformer, RationalTransformer>;

inline TruthCarrier carrier_of(const PredicateTransformer& t) {
  return std::holds_alternative<BoolTransformer>(t) ? TruthCarrier::Boolean : TruthCarrier::RationalUnit;
}

}  // namespace wpb

#endif  // WPB_TRANSFORMER_HPP
