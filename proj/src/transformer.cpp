#include "wpb/transformer.hpp"

namespace wpb {

BoolTransformer BoolTransformer::identity(const FinSet& y) {
  return from_function(y, y, [](Mask m) { return m; });
}

BoolTransformer BoolTransformer::constant(const FinSet& y, const FinSet& x, Mask value) {
  return from_function(y, x, [value](Mask) { return value; });
}

BoolTransformer BoolTransformer::from_function(const FinSet& y, const FinSet& x,
                                               const std::function<Mask(Mask)>& fn) {
  if (y.size() > 24) throw SizeGuardError("dense Boolean table over more than 2^24 predicates");
  BoolTransformer t{y, x, std::vector<Mask>(std::size_t{1} << y.size())};
  for (Mask k = 0; k < t.table.size(); ++k) t.table[k] = fn(k);
  return t;
}

BoolTransformer compose(const BoolTransformer& phi, const BoolTransformer& psi) {
  if (!(psi.target == phi.source)) throw std::invalid_argument("compose: carrier mismatch");
  return BoolTransformer::from_function(psi.source, phi.target, [&](Mask h) { return phi(psi(h)); });
}

RationalTransformer RationalTransformer::identity(const FinSet& y) {
  return RationalTransformer{y, y, [](const RationalVector& p) { return p; }, nullptr, "identity"};
}

RationalTransformer RationalTransformer::pointwise(
    const FinSet& y, const FinSet& x, std::function<Rational(const RationalVector&, std::size_t)> value,
    std::string description) {
  const std::size_t n = x.size();
  return RationalTransformer{
      y, x,
      [value = std::move(value), n](const RationalVector& p) {
        RationalVector out(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) out[static_cast<Eigen::Index>(i)] = value(p, i);
        return out;
      },
      nullptr, std::move(description)};
}

RationalTransformer compose(const RationalTransformer& phi, const RationalTransformer& psi) {
  if (!(psi.target == phi.source)) throw std::invalid_argument("compose: carrier mismatch");
  return RationalTransformer{psi.source, phi.target,
                             [phi, psi](const RationalVector& p) { return phi(psi(p)); }, nullptr,
                             "(" + phi.description + ") . (" + psi.description + ")"};
}

}  // namespace wpb
