#include "wpb/synthesis.hpp"

#include "wpb/modalities.hpp"

#include <map>

namespace wpb {

namespace {

void require(const Verdict& v) {
  if (v.unhealthy()) throw SynthesisError(v);
}

Verdict reconstruct_check(const PredicateTransformer& rebuilt, const PredicateTransformer& phi, const ProbeGrid* grid) {
  return transformers_agree(rebuilt, phi, grid, "re-evaluation: pt(synth(phi)) = phi");
}

// Dirac probes phi(delta_y), one column per y, as a |X| x |Y| matrix.
RationalMatrix dirac_columns(const RationalTransformer& phi) {
  const auto nx = static_cast<Eigen::Index>(phi.target.size());
  const auto ny = static_cast<Eigen::Index>(phi.source.size());
  RationalMatrix m(nx, ny);
  for (Eigen::Index y = 0; y < ny; ++y) m.col(y) = phi(dirac(phi.source.size(), static_cast<std::size_t>(y)));
  return m;
}

// First entry of a reconstructed weight matrix outside [0,1], or a row whose
// mass breaks the bound; reported as an unhealthy residual.
std::optional<Verdict> weights_out_of_range(const RationalTransformer& phi, const RationalMatrix& m,
                                            bool total_mass_one, std::function<RationalMatrix()> rebuild) {
  for (Eigen::Index x = 0; x < m.rows(); ++x) {
    for (Eigen::Index y = 0; y < m.cols(); ++y) {
      if (!in_unit_interval(m(x, y))) {
        auto recheck = [rebuild, x, y] { return !in_unit_interval(rebuild()(x, y)); };
        return Verdict::fail(Witness{"reconstructed weight lies in [0,1]",
                                     {"x = " + phi.target.label(static_cast<std::size_t>(x)),
                                      "y = " + phi.source.label(static_cast<std::size_t>(y))},
                                     to_string(m(x, y)), "[0,1]", recheck},
                             static_cast<std::size_t>(x * m.cols() + y + 1));
      }
    }
    const Rational s = m.row(x).sum();
    const bool bad = total_mass_one ? s != 1 : s > 1;
    if (bad) {
      auto recheck = [rebuild, x, total_mass_one] {
        const Rational t = rebuild().row(x).sum();
        return total_mass_one ? t != 1 : t > 1;
      };
      return Verdict::fail(Witness{total_mass_one ? "reconstructed mass equals 1" : "reconstructed mass is at most 1",
                                   {"x = " + phi.target.label(static_cast<std::size_t>(x))}, to_string(s),
                                   total_mass_one ? "1" : "<= 1", recheck},
                           static_cast<std::size_t>(m.size()));
    }
  }
  return std::nullopt;
}

const Modality& modality_for(std::string_view name) {
  static const std::map<std::string, Modality, std::less<>> cache = [] {
    std::map<std::string, Modality, std::less<>> m;
    for (const char* n : {"diamond", "box", "game", "dijkstra", "total", "partial", "convex", "demonic_prob"})
      m.emplace(n, builtin_modality(n));
    return m;
  }();
  return cache.find(name)->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernels

std::vector<Mask> relation_rows_diamond(const std::vector<Mask>& table, std::size_t nx, std::size_t ny) {
  std::vector<Mask> rows(nx, 0);
  for (std::size_t y = 0; y < ny; ++y) {
    const Mask image = table[bit(y)];
    for (std::size_t x = 0; x < nx; ++x)
      if (has(image, x)) rows[x] |= bit(y);
  }
  return rows;
}

std::vector<Mask> relation_rows_box(const std::vector<Mask>& table, std::size_t nx, std::size_t ny) {
  const Mask full = ny == 0 ? 0 : (Mask{1} << ny) - 1;
  std::vector<Mask> rows(nx, 0);
  for (std::size_t y = 0; y < ny; ++y) {
    const Mask image = table[full & ~bit(y)];
    for (std::size_t x = 0; x < nx; ++x)
      if (!has(image, x)) rows[x] |= bit(y);
  }
  return rows;
}

void wp_diamond_table(const std::vector<Mask>& rows, std::size_t ny, std::vector<Mask>& out) {
  out.assign(std::size_t{1} << ny, 0);
  for (Mask g = 0; g < out.size(); ++g)
    for (std::size_t x = 0; x < rows.size(); ++x)
      if (rows[x] & g) out[g] |= bit(x);
}

void wp_box_table(const std::vector<Mask>& rows, std::size_t ny, std::vector<Mask>& out) {
  out.assign(std::size_t{1} << ny, 0);
  for (Mask g = 0; g < out.size(); ++g)
    for (std::size_t x = 0; x < rows.size(); ++x)
      if ((rows[x] & ~g) == 0) out[g] |= bit(x);
}

// ---------------------------------------------------------------------------

SynthesisResult synth_relation(const BoolTransformer& phi, RelationModality modality) {
  const bool diamond = modality == RelationModality::Diamond;
  require(diamond ? check_join_preserving(phi) : check_meet_preserving(phi));
  const std::size_t nx = phi.target.size(), ny = phi.source.size();
  const auto masks = diamond ? relation_rows_diamond(phi.table, nx, ny) : relation_rows_box(phi.table, nx, ny);
  std::vector<Row> rows;
  for (Mask m : masks) rows.push_back(Subset{m});
  KleisliArrow r(MonadKind::Powerset, phi.target, phi.source, rows);
  PredicateTransformer back = diamond ? wp_diamond(r) : wp_box(r);
  Verdict residual = reconstruct_check(back, phi, nullptr);
  return SynthesisResult{std::move(r), std::move(residual), {}, {}};
}

SynthesisResult synth_subdist(const RationalTransformer& phi, GemodVariant variant, const ProbeGrid& grid) {
  Verdict pre = check_gemod_morphism(phi, grid, variant);
  require(pre);
  if (pre.status == Status::Inconclusive) return SynthesisResult{std::nullopt, pre, {}, {}};

  const bool partial = variant == GemodVariant::Partial;
  auto rebuild = [phi, partial]() -> RationalMatrix {
    RationalMatrix m = dirac_columns(phi);
    if (partial) {
      const RationalVector zero = phi(constant(phi.source.size(), 0));
      for (Eigen::Index y = 0; y < m.cols(); ++y) m.col(y) -= zero;
    }
    return m;
  };
  const RationalMatrix m = rebuild();
  if (auto bad = weights_out_of_range(phi, m, false, rebuild)) return SynthesisResult{std::nullopt, *bad, {}, {}};

  // Mass check: phi(1) = mass (total) or phi(0) = 1 - mass (partial).
  const RationalVector ones = RationalVector::Ones(m.cols());
  const RationalVector probe = phi(constant(phi.source.size(), partial ? 0 : 1));
  const RationalVector expected =
      partial ? RationalVector(RationalVector::Ones(m.rows()) - m * ones) : RationalVector(m * ones);
  if (!equal(probe, expected)) {
    auto recheck = [phi, partial, rebuild] {
      const RationalMatrix mm = rebuild();
      const RationalVector one = RationalVector::Ones(mm.cols());
      const RationalVector e =
          partial ? RationalVector(RationalVector::Ones(mm.rows()) - mm * one) : RationalVector(mm * one);
      return !equal(phi(constant(phi.source.size(), partial ? 0 : 1)), e);
    };
    return SynthesisResult{std::nullopt,
                           Verdict::fail(Witness{partial ? "phi(0) = 1 - mass" : "phi(1) = mass", {},
                                                 to_string(probe), to_string(expected), recheck},
                                         1),
                           {}, {}};
  }

  KleisliArrow f(MonadKind::SubDist, phi.target, phi.source, m);
  Verdict residual = reconstruct_check(pt_modality(f, modality_for(partial ? "partial" : "total")), phi, &grid);
  return SynthesisResult{std::move(f), std::move(residual), {}, {}};
}

SynthesisResult synth_dist(const RationalTransformer& phi, const ProbeGrid& grid) {
  Verdict pre = check_emod_morphism(phi, grid);
  require(pre);
  if (pre.status == Status::Inconclusive) return SynthesisResult{std::nullopt, pre, {}, {}};

  auto rebuild = [phi] { return dirac_columns(phi); };
  const RationalMatrix m = rebuild();
  if (auto bad = weights_out_of_range(phi, m, true, rebuild)) return SynthesisResult{std::nullopt, *bad, {}, {}};
  const RationalVector one = phi(constant(phi.source.size(), 1));
  if (!equal(one, RationalVector::Ones(m.rows()))) {
    auto recheck = [phi] {
      return !equal(phi(constant(phi.source.size(), 1)), RationalVector::Ones(phi.target.size()));
    };
    return SynthesisResult{std::nullopt,
                           Verdict::fail(Witness{"phi(1) = 1", {}, to_string(one), "1", recheck}, 1), {}, {}};
  }
  KleisliArrow f(MonadKind::Dist, phi.target, phi.source, m);
  Verdict residual = reconstruct_check(pt_modality(f, modality_for("convex")), phi, &grid);
  return SynthesisResult{std::move(f), std::move(residual), {}, {}};
}

SynthesisResult synth_upfamily(const BoolTransformer& phi) {
  require(check_monotone(phi));
  const std::size_t nx = phi.target.size();
  std::vector<Row> rows(nx, UpFamily{});
  for (Mask s = 0; s < phi.table.size(); ++s)
    for (std::size_t x = 0; x < nx; ++x)
      if (has(phi(s), x)) std::get<UpFamily>(rows[x]).members.push_back(s);
  KleisliArrow f(MonadKind::UpPowerset, phi.target, phi.source, rows);
  Verdict residual = reconstruct_check(pt_modality(f, modality_for("game")), phi, nullptr);
  return SynthesisResult{std::move(f), std::move(residual), {}, {}};
}

SynthesisResult synth_dijkstra(const BoolTransformer& phi) {
  // An empty Y leaves only the constant 0, realized by diverging everywhere.
  require(check_strict_nonempty_meets(phi));
  const std::size_t nx = phi.target.size(), ny = phi.source.size();
  const Mask full = (Mask{1} << ny) - 1;
  std::vector<Row> rows;
  std::vector<std::string> notes;
  for (std::size_t x = 0; x < nx; ++x) {
    if (!has(phi(full), x)) {
      rows.push_back(LiftedSubset{0, true});
      if (notes.empty()) notes.push_back("bottom-absorption");
      continue;
    }
    Mask s = 0;
    for (std::size_t y = 0; y < ny; ++y)
      if (!has(phi(full & ~bit(y)), x)) s |= bit(y);
    if (s == 0) {
      auto recheck = [phi, full, x, ny] {
        for (std::size_t y = 0; y < ny; ++y)
          if (!has(phi(full & ~bit(y)), x)) return false;
        return has(phi(full), x);
      };
      return SynthesisResult{std::nullopt,
                             Verdict::fail(Witness{"meet of all co-singletons is 0 while phi(1) = 1",
                                                   {"x = " + phi.target.label(x)}, "1", "0", recheck},
                                           1),
                             {}, {}};
    }
    rows.push_back(LiftedSubset{s, false});
  }
  KleisliArrow f(MonadKind::NonemptyPowersetLift, phi.target, phi.source, rows);
  Verdict residual = reconstruct_check(pt_modality(f, modality_for("dijkstra")), phi, nullptr);
  return SynthesisResult{std::move(f), std::move(residual), std::move(notes), {}};
}

SynthesisResult synth_polytope(const RationalTransformer& phi, const ProbeGrid& grid) {
  if (phi.source.empty()) throw InputError("empty-target", "polytope synthesis needs a nonempty Y");
  Verdict pre = check_regular_sublinear(phi, grid);
  require(pre);
  SynthesisResult out{std::nullopt, pre, {}, {}};
  if (pre.status == Status::Inconclusive) return out;

  const std::size_t nx = phi.target.size(), ny = phi.source.size();
  std::vector<RationalVector> values;
  for (const auto& p : grid.predicates) values.push_back(phi(p));

  std::vector<Row> rows;
  std::size_t checked = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<polytope::HalfSpace<Rational>> cuts;
    for (std::size_t k = 0; k < grid.predicates.size(); ++k) {
      const Rational& b = values[k][static_cast<Eigen::Index>(x)];
      cuts.push_back({grid.predicates[k], b});
    }
    out.halfspaces.push_back(cuts);
    // p . mu >= b with b <= 0 holds on the whole simplex
    std::vector<polytope::HalfSpace<Rational>> active;
    for (const auto& h : cuts)
      if (h.b > 0) active.push_back(h);
    const auto vertices = polytope::simplex_vertices<Rational>(ny, active);
    if (vertices.empty()) {
      out.residual = Verdict::inconclusive(checked, "candidate region for " + phi.target.label(x) +
                                                        " is empty; the grid cannot certify a realizing polytope");
      return out;
    }
    for (std::size_t k = 0; k < grid.predicates.size(); ++k) {
      ++checked;
      const Rational low = polytope::minimum(vertices, grid.predicates[k]);
      if (low != values[k][static_cast<Eigen::Index>(x)]) {
        out.residual = Verdict::inconclusive(
            checked, "minimum over the candidate region for " + phi.target.label(x) + " at p = " +
                         to_string(grid.predicates[k]) + " is " + to_string(low) + ", not " +
                         to_string(values[k][static_cast<Eigen::Index>(x)]));
        return out;
      }
    }
    DistributionPolytope row;
    for (const auto& v : vertices) row.vertices.push_back(v.point);
    rows.push_back(std::move(row));
  }
  KleisliArrow f(MonadKind::CvDist, phi.target, phi.source, rows);
  out.residual = reconstruct_check(pt_modality(f, modality_for("demonic_prob")), phi, &grid);
  out.arrow = std::move(f);
  return out;
}

// ---------------------------------------------------------------------------

InstanceInfo instance_info(std::string_view id) {
  using M = MonadKind;
  using C = StructureClass;
  if (id == "may") return {"may", M::Powerset, "diamond", C::JoinLattice};
  if (id == "must") return {"must", M::Powerset, "box", C::MeetLattice};
  if (id == "game") return {"game", M::UpPowerset, "game", C::Poset};
  if (id == "dijkstra") return {"dijkstra", M::NonemptyPowersetLift, "dijkstra", C::StrictMeetSemilattice};
  if (id == "subdist_total") return {"subdist_total", M::SubDist, "total", C::GEMod};
  if (id == "subdist_partial") return {"subdist_partial", M::SubDist, "partial", C::GEModDual};
  if (id == "dist_convex") return {"dist_convex", M::Dist, "convex", C::EMod};
  if (id == "cv_sublinear") return {"cv_sublinear", M::CvDist, "demonic_prob", C::EModSublinear};
  throw InputError("unknown-theorem", "unknown theorem instance '" + std::string(id) + "'");
}

KleisliArrow normalize(const KleisliArrow& f) {
  if (f.monad() != MonadKind::NonemptyPowersetLift) return f;
  std::vector<Row> rows;
  for (const Row& r : f.rows()) {
    const auto& s = std::get<LiftedSubset>(r);
    rows.push_back(s.bottom ? LiftedSubset{0, true} : s);
  }
  return KleisliArrow(f.monad(), f.source(), f.target(), rows);
}

SynthesisResult synthesize(const PredicateTransformer& phi, std::string_view instance, const ProbeGrid* grid) {
  const InstanceInfo info = instance_info(instance);
  const bool boolean = is_boolean_class(info.cls);
  if (boolean != std::holds_alternative<BoolTransformer>(phi)) {
    throw InputError("carrier-mismatch", "instance '" + info.id + "' needs a " +
                                             (boolean ? std::string("Boolean") : std::string("rational")) +
                                             " transformer");
  }
  if (boolean) {
    const auto& b = std::get<BoolTransformer>(phi);
    if (info.id == "may") return synth_relation(b, RelationModality::Diamond);
    if (info.id == "must") return synth_relation(b, RelationModality::Box);
    if (info.id == "game") return synth_upfamily(b);
    return synth_dijkstra(b);
  }
  const auto& r = std::get<RationalTransformer>(phi);
  ProbeGrid local;
  if (!grid) {
    local = ProbeGrid::standard(r.source.size());
    grid = &local;
  }
  if (info.id == "subdist_total") return synth_subdist(r, GemodVariant::Total, *grid);
  if (info.id == "subdist_partial") return synth_subdist(r, GemodVariant::Partial, *grid);
  if (info.id == "dist_convex") return synth_dist(r, *grid);
  return synth_polytope(r, *grid);
}

Verdict roundtrip_verify(const KleisliArrow& f, std::string_view instance, const ProbeGrid* grid) {
  const InstanceInfo info = instance_info(instance);
  if (f.monad() != info.monad) {
    throw InputError("monad-mismatch", "instance '" + info.id + "' needs a " + std::string(to_string(info.monad)) +
                                           " computation");
  }
  const Modality& tau = modality_for(info.modality);
  ProbeGrid local;
  if (!grid && tau.carrier == TruthCarrier::RationalUnit) {
    local = ProbeGrid::standard(f.target().size());
    grid = &local;
  }
  const PredicateTransformer phi = pt_modality(f, tau);
  SynthesisResult res;
  try {
    res = synthesize(phi, instance, grid);
  } catch (const SynthesisError& e) {
    Verdict v = e.verdict();
    if (v.witness) v.witness->law = "pt(f) is healthy: " + v.witness->law;
    return v;
  }
  if (!res.arrow) return res.residual;

  std::vector<Verdict> parts{res.residual};
  if (f.monad() == MonadKind::CvDist) {
    parts.push_back(transformers_agree(pt_modality(*res.arrow, tau), phi, grid,
                                       "semantic arrow equality: minima of synth(pt f) and f agree"));
  } else {
    const KleisliArrow expected = normalize(f);
    const KleisliArrow got = *res.arrow;
    if (!(got == expected)) {
      auto recheck = [got, expected] { return !(got == expected); };
      parts.push_back(Verdict::fail(Witness{"synth(pt f) = normalize(f)", {"f = " + describe(f)}, describe(got),
                                            describe(expected), recheck},
                                    1));
    } else {
      parts.push_back(Verdict::pass(1));
    }
  }
  parts.push_back(transformers_agree(pt_modality(*res.arrow, tau), phi, grid, "pt(synth(pt f)) = pt f"));
  return combine(parts);
}

}  // namespace wpb
