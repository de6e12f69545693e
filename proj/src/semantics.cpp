#include "wpb/semantics.hpp"

#include <memory>

namespace wpb {

namespace {

void require_monad(const KleisliArrow& f, MonadKind kind, const char* who) {
  if (f.monad() != kind) {
    throw std::invalid_argument(std::string(who) + ": arrow uses monad " + std::string(to_string(f.monad())));
  }
}

// Matrix route for expectation-style modalities: F p + r (1 - F 1).
RationalTransformer expectation_transformer(const KleisliArrow& f, const Rational& r, std::string description) {
  const RationalMatrix m = f.matrix();
  RationalVector slack = RationalVector::Ones(m.rows()) - m * RationalVector::Ones(m.cols());
  RationalVector offset = slack * r;
  return RationalTransformer{f.target(), f.source(),
                             [m, offset](const RationalVector& p) -> RationalVector { return m * p + offset; },
                             std::make_shared<const KleisliArrow>(f), std::move(description)};
}

}  // namespace

BoolTransformer wp_diamond(const KleisliArrow& relation) {
  require_monad(relation, MonadKind::Powerset, "wp_diamond");
  std::vector<Mask> rows;
  for (const Row& r : relation.rows()) rows.push_back(std::get<Subset>(r).elements);
  return BoolTransformer::from_function(relation.target(), relation.source(), [&](Mask g) {
    Mask out = 0;
    for (std::size_t x = 0; x < rows.size(); ++x)
      if (rows[x] & g) out |= bit(x);
    return out;
  });
}

BoolTransformer wp_box(const KleisliArrow& relation) {
  require_monad(relation, MonadKind::Powerset, "wp_box");
  std::vector<Mask> rows;
  for (const Row& r : relation.rows()) rows.push_back(std::get<Subset>(r).elements);
  return BoolTransformer::from_function(relation.target(), relation.source(), [&](Mask g) {
    Mask out = 0;
    for (std::size_t x = 0; x < rows.size(); ++x)
      if ((rows[x] & ~g) == 0) out |= bit(x);
    return out;
  });
}

PredicateTransformer pt_modality(const KleisliArrow& f, const Modality& tau) {
  if (f.monad() != tau.monad) {
    throw std::invalid_argument("modality " + tau.name + " is an algebra for " + std::string(to_string(tau.monad)) +
                                ", not " + std::string(to_string(f.monad())));
  }
  const std::string desc = "pt^" + tau.name + "(" + f.source().name() + " -> " + f.target().name() + ")";
  if (tau.carrier == TruthCarrier::Boolean) {
    const std::size_t ny = f.target().size();
    return BoolTransformer::from_function(f.target(), f.source(), [&](Mask g) {
      const RationalVector gv = to_vector(g, ny);
      Mask out = 0;
      for (std::size_t x = 0; x < f.source().size(); ++x)
        if (tau(push_forward(f.monad(), f.row(x), gv)) == 1) out |= bit(x);
      return out;
    });
  }
  if (f.monad() == MonadKind::SubDist && tau.parameter) return expectation_transformer(f, *tau.parameter, desc);
  if (f.monad() == MonadKind::Dist && tau.name == "convex") return expectation_transformer(f, 0, desc);

  auto arrow = std::make_shared<const KleisliArrow>(f);
  auto eval = tau.evaluate;
  const std::size_t nx = f.source().size();
  return RationalTransformer{f.target(), f.source(),
                             [arrow, eval, nx](const RationalVector& p) {
                               RationalVector out(static_cast<Eigen::Index>(nx));
                               for (std::size_t x = 0; x < nx; ++x)
                                 out[static_cast<Eigen::Index>(x)] =
                                     eval(push_forward(arrow->monad(), arrow->row(x), p));
                               return out;
                             },
                             arrow, desc};
}

PredicateTransformer pt_alternating(const KleisliArrow& f, std::string_view modality) {
  std::string name(modality);
  if (name == "inner_meet/outer_strict" || name == "box/lift") name = "dijkstra";
  if (name == "box/diamond") name = "game";
  if (name == "convex/inf") name = "demonic_prob";
  Modality tau = builtin_modality(name);
  if (!tau.alternating) throw InputError("not-alternating", "modality '" + name + "' is not an alternating one");
  return pt_modality(f, tau);
}

Verdict transformers_agree(const PredicateTransformer& a, const PredicateTransformer& b, const ProbeGrid* grid,
                           std::string law) {
  if (carrier_of(a) != carrier_of(b)) throw std::invalid_argument("transformers over different truth carriers");
  if (std::holds_alternative<BoolTransformer>(a)) {
    const auto& p = std::get<BoolTransformer>(a);
    const auto& q = std::get<BoolTransformer>(b);
    if (p.table.size() != q.table.size()) throw std::invalid_argument("transformers over different carriers");
    for (Mask g = 0; g < p.table.size(); ++g) {
      if (p(g) != q(g)) {
        auto recheck = [p, q, g] { return p(g) != q(g); };
        return Verdict::fail(Witness{law, {"g = " + bitstring(g, p.source.size())}, bitstring(p(g), p.target.size()),
                                     bitstring(q(g), q.target.size()), recheck},
                             g + 1);
      }
    }
    return Verdict::pass(p.table.size());
  }
  const auto& p = std::get<RationalTransformer>(a);
  const auto& q = std::get<RationalTransformer>(b);
  ProbeGrid local;
  if (!grid) {
    local = ProbeGrid::standard(p.source.size());
    grid = &local;
  }
  std::size_t checked = 0;
  for (const auto& g : grid->predicates) {
    ++checked;
    if (!equal(p(g), q(g))) {
      auto recheck = [p, q, g] { return !equal(p(g), q(g)); };
      return Verdict::fail(Witness{law, {"p = " + to_string(g)}, to_string(p(g)), to_string(q(g)), recheck}, checked);
    }
  }
  if (!grid->meets_minimum(p.source.size())) return Verdict::inconclusive(checked, "probe grid below the minimum");
  return Verdict::pass(checked, "confirmed on the probe grid only");
}

Verdict check_functoriality(const Modality& tau, const KleisliArrow& f, const KleisliArrow& g, const ProbeGrid* grid,
                            const ComposeFn& compose) {
  const KleisliArrow gf = compose(f, g);
  const PredicateTransformer lhs = pt_modality(gf, tau);
  const PredicateTransformer pf = pt_modality(f, tau);
  const PredicateTransformer pg = pt_modality(g, tau);
  PredicateTransformer rhs = std::holds_alternative<BoolTransformer>(pf)
                                 ? PredicateTransformer(wpb::compose(std::get<BoolTransformer>(pf),
                                                                std::get<BoolTransformer>(pg)))
                                 : PredicateTransformer(wpb::compose(std::get<RationalTransformer>(pf),
                                                                std::get<RationalTransformer>(pg)));
  Verdict v = transformers_agree(lhs, rhs, grid, "functoriality: P(g . f) = P(f) o P(g) under " + tau.name);
  if (v.unhealthy()) {
    v.witness->arguments.insert(v.witness->arguments.begin(), {"f = " + describe(f), "g = " + describe(g)});
  }
  return v;
}

Verdict check_unit_preservation(const Modality& tau, const FinSet& x, const ProbeGrid* grid) {
  const PredicateTransformer lhs = pt_modality(unit_arrow(tau.monad, x), tau);
  PredicateTransformer rhs = tau.carrier == TruthCarrier::Boolean
                                 ? PredicateTransformer(BoolTransformer::identity(x))
                                 : PredicateTransformer(RationalTransformer::identity(x));
  return transformers_agree(lhs, rhs, grid, "unit: P(eta) = id under " + tau.name);
}

}  // namespace wpb
