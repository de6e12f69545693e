#include "wpb/modalities.hpp"

#include <algorithm>
#include <map>

namespace wpb {

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ValueDistribution push_weights(const RationalVector& w, const RationalVector& h) {
  std::map<Rational, Rational> acc;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] != 0) acc[h[i]] += w[i];
  ValueDistribution out;
  out.weights.assign(acc.begin(), acc.end());
  return out;
}

bool same_distribution(const ValueDistribution& a, const ValueDistribution& b) { return a.weights == b.weights; }

Rational expectation(const ValueDistribution& d) {
  Rational s = 0;
  for (const auto& [v, w] : d.weights) s += v * w;
  return s;
}

Rational total_mass(const ValueDistribution& d) {
  Rational s = 0;
  for (const auto& [v, w] : d.weights) s += w;
  return s;
}

template <typename T>
const T& expect(const OmegaRow& row, const char* modality) {
  if (const auto* p = std::get_if<T>(&row)) return *p;
  throw std::invalid_argument(std::string("modality ") + modality + " applied to a row of the wrong monad");
}

}  // namespace

OmegaRow push_forward(MonadKind kind, const Row& t, const RationalVector& h) {
  switch (kind) {
    case MonadKind::Powerset: {
      std::vector<Rational> vals;
      for (std::size_t z : members(std::get<Subset>(t).elements)) vals.push_back(h[static_cast<Eigen::Index>(z)]);
      return ValueSet{sorted_unique(std::move(vals))};
    }
    case MonadKind::NonemptyPowersetLift: {
      const auto& s = std::get<LiftedSubset>(t);
      std::vector<Rational> vals;
      for (std::size_t z : members(s.elements)) vals.push_back(h[static_cast<Eigen::Index>(z)]);
      return LiftedValueSet{sorted_unique(std::move(vals)), s.bottom};
    }
    case MonadKind::SubDist:
    case MonadKind::Dist: return push_weights(std::get<Weights>(t).mass, h);
    case MonadKind::UpPowerset: {
      ValueUpFamily out;
      out.universe = sorted_unique(std::vector<Rational>(h.data(), h.data() + h.size()));
      const auto& fam = std::get<UpFamily>(t).members;
      const std::size_t k = out.universe.size();
      for (Mask u = 0; u < (Mask{1} << k); ++u) {
        Mask pre = 0;
        for (Eigen::Index z = 0; z < h.size(); ++z) {
          auto pos = static_cast<std::size_t>(std::lower_bound(out.universe.begin(), out.universe.end(), h[z]) -
                                              out.universe.begin());
          if (has(u, pos)) pre |= bit(static_cast<std::size_t>(z));
        }
        if (std::binary_search(fam.begin(), fam.end(), pre)) out.members.push_back(u);
      }
      return out;
    }
    case MonadKind::CvDist: {
      ValuePolytope out;
      for (const auto& v : std::get<DistributionPolytope>(t).vertices) {
        ValueDistribution d = push_weights(v, h);
        bool dup = std::any_of(out.vertices.begin(), out.vertices.end(),
                               [&](const ValueDistribution& e) { return same_distribution(e, d); });
        if (!dup) out.vertices.push_back(std::move(d));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

ReifiedRow reify(MonadKind kind, const OmegaRow& omega) {
  auto carrier_for = [](const std::vector<Rational>& values) {
    std::vector<std::string> labels;
    for (const auto& v : values) labels.push_back(to_string(v));
    return FinSet("Omega", std::move(labels));
  };
  auto as_vector = [](const std::vector<Rational>& values) {
    RationalVector h(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) h[static_cast<Eigen::Index>(i)] = values[i];
    return h;
  };
  auto index_in = [](const std::vector<Rational>& values, const Rational& v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
  };
  auto weights_over = [&](const ValueDistribution& d, const std::vector<Rational>& values) {
    RationalVector w = RationalVector::Zero(static_cast<Eigen::Index>(values.size()));
    for (const auto& [v, m] : d.weights) w[static_cast<Eigen::Index>(index_in(values, v))] += m;
    return w;
  };

  return std::visit(
      [&](const auto& x) -> ReifiedRow {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ValueSet>) {
          Mask all = x.values.empty() ? 0 : (Mask{1} << x.values.size()) - 1;
          return {carrier_for(x.values), Subset{all}, as_vector(x.values)};
        } else if constexpr (std::is_same_v<T, LiftedValueSet>) {
          Mask all = x.values.empty() ? 0 : (Mask{1} << x.values.size()) - 1;
          return {carrier_for(x.values), LiftedSubset{all, x.bottom}, as_vector(x.values)};
        } else if constexpr (std::is_same_v<T, ValueDistribution>) {
          std::vector<Rational> values;
          for (const auto& [v, m] : x.weights) values.push_back(v);
          return {carrier_for(values), Weights{weights_over(x, values)}, as_vector(values)};
        } else if constexpr (std::is_same_v<T, ValueUpFamily>) {
          return {carrier_for(x.universe), UpFamily{x.members}, as_vector(x.universe)};
        } else {
          std::vector<Rational> values;
          for (const auto& d : x.vertices)
            for (const auto& [v, m] : d.weights) values.push_back(v);
          values = sorted_unique(std::move(values));
          DistributionPolytope p;
          for (const auto& d : x.vertices) p.vertices.push_back(weights_over(d, values));
          return {carrier_for(values), p, as_vector(values)};
        }
      },
      omega);
  (void)kind;
}

// ---------------------------------------------------------------------------

namespace {

Modality make_tau_r(std::string name, const Rational& r) {
  if (!in_unit_interval(r)) throw InputError("parameter-out-of-range", "tau_r needs r in [0,1]");
  std::optional<StructureClass> cls;
  if (r == 0) cls = StructureClass::GEMod;
  if (r == 1) cls = StructureClass::GEModDual;
  return Modality{std::move(name), TruthCarrier::RationalUnit, MonadKind::SubDist, cls,
                  [r](const OmegaRow& row) {
                    const auto& d = expect<ValueDistribution>(row, "tau_r");
                    return expectation(d) + r * (Rational(1) - total_mass(d));
                  },
                  r, std::nullopt};
}

}  // namespace

Modality builtin_modality(std::string_view name, std::optional<Rational> r) {
  if (name.starts_with("tau_r:")) return make_tau_r("tau_r", parse_rational(name.substr(6)));
  if (name == "diamond") {
    return Modality{"diamond", TruthCarrier::Boolean, MonadKind::Powerset, StructureClass::JoinLattice,
                    [](const OmegaRow& row) {
                      const auto& s = expect<ValueSet>(row, "diamond");
                      return s.values.empty() ? Rational(0) : s.values.back();
                    },
                    std::nullopt, std::nullopt};
  }
  if (name == "box") {
    return Modality{"box", TruthCarrier::Boolean, MonadKind::Powerset, StructureClass::MeetLattice,
                    [](const OmegaRow& row) {
                      const auto& s = expect<ValueSet>(row, "box");
                      return s.values.empty() ? Rational(1) : s.values.front();
                    },
                    std::nullopt, std::nullopt};
  }
  if (name == "tau_r") {
    if (!r) throw InputError("missing-parameter", "tau_r needs a parameter r (write tau_r:p/q)");
    return make_tau_r("tau_r", *r);
  }
  if (name == "total") return make_tau_r("total", 0);
  if (name == "partial") return make_tau_r("partial", 1);
  if (name == "convex") {
    return Modality{"convex", TruthCarrier::RationalUnit, MonadKind::Dist, StructureClass::EMod,
                    [](const OmegaRow& row) { return expectation(expect<ValueDistribution>(row, "convex")); },
                    std::nullopt, std::nullopt};
  }
  if (name == "dijkstra") {
    return Modality{"dijkstra", TruthCarrier::Boolean, MonadKind::NonemptyPowersetLift,
                    StructureClass::StrictMeetSemilattice,
                    [](const OmegaRow& row) {
                      const auto& s = expect<LiftedValueSet>(row, "dijkstra");
                      if (s.bottom) return Rational(0);
                      return s.values.empty() ? Rational(1) : s.values.front();
                    },
                    std::nullopt,
                    std::pair<std::string, std::string>{"strict lift: divergence yields 0",
                                                        "demonic: meet over the nonempty choice set"}};
  }
  if (name == "game") {
    return Modality{"game", TruthCarrier::Boolean, MonadKind::UpPowerset, StructureClass::Poset,
                    [](const OmegaRow& row) {
                      const auto& u = expect<ValueUpFamily>(row, "game");
                      Rational best = 0;
                      for (Mask m : u.members) {
                        Rational worst = 1;
                        for (std::size_t i : members(m)) worst = std::min(worst, u.universe[i]);
                        best = std::max(best, worst);
                      }
                      return best;
                    },
                    std::nullopt,
                    std::pair<std::string, std::string>{"meet over the chosen set", "join over the family"}};
  }
  if (name == "demonic_prob") {
    return Modality{"demonic_prob", TruthCarrier::RationalUnit, MonadKind::CvDist, StructureClass::EModSublinear,
                    [](const OmegaRow& row) {
                      const auto& p = expect<ValuePolytope>(row, "demonic_prob");
                      if (p.vertices.empty()) return Rational(1);
                      Rational best = expectation(p.vertices.front());
                      for (const auto& d : p.vertices) best = std::min(best, expectation(d));
                      return best;
                    },
                    std::nullopt,
                    std::pair<std::string, std::string>{"expectation over the distribution",
                                                        "infimum over the polytope"}};
  }
  throw InputError("unknown-modality", "unknown modality '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

MonadMapSpec algebra_to_monad_map(const Modality& tau) {
  MonadMapSpec m;
  m.name = tau.name + "_map";
  m.source = tau.monad;
  m.carrier = tau.carrier;
  m.target_class = tau.structure;
  const MonadKind kind = tau.monad;
  auto eval = tau.evaluate;
  m.evaluate = [kind, eval](const FinSet&, const Row& t, const RationalVector& h) {
    return eval(push_forward(kind, t, h));
  };
  return m;
}

Modality monad_map_to_algebra(const MonadMapSpec& alpha, MonadKind monad, std::string name) {
  if (!alpha.evaluation_form()) throw std::invalid_argument("only evaluation-form maps induce algebras");
  auto eval = alpha.evaluate;
  Modality tau;
  tau.name = name.empty() ? alpha.name + "_algebra" : std::move(name);
  tau.carrier = alpha.carrier;
  tau.monad = monad;
  tau.structure = alpha.target_class;
  tau.evaluate = [monad, eval](const OmegaRow& row) {
    ReifiedRow r = reify(monad, row);
    return eval(r.carrier, r.row, r.valuation);
  };
  return tau;
}

MonadMapSpec sigma_map() {
  MonadMapSpec m = algebra_to_monad_map(builtin_modality("diamond"));
  m.name = "sigma";
  return m;
}

MonadMapSpec sigma_prime_map() {
  MonadMapSpec m = algebra_to_monad_map(builtin_modality("box"));
  m.name = "sigma'";
  return m;
}

MonadMapSpec support_map() {
  MonadMapSpec m;
  m.name = "support";
  m.source = MonadKind::Dist;
  m.target_monad = MonadKind::Powerset;
  m.transform = [](const FinSet&, const Row& t) {
    const auto& w = std::get<Weights>(t).mass;
    Mask s = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      if (w[i] != 0) s |= bit(static_cast<std::size_t>(i));
    return Row{Subset{s}};
  };
  return m;
}

Mask sigma_inverse(const std::vector<bool>& xi, std::size_t n) {
  Mask s = 0;
  for (std::size_t x = 0; x < n; ++x)
    if (xi[bit(x)]) s |= bit(x);
  return s;
}

Mask sigma_prime_inverse(const std::vector<bool>& xi, std::size_t n) {
  const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
  Mask s = 0;
  for (std::size_t x = 0; x < n; ++x)
    if (!xi[full & ~bit(x)]) s |= bit(x);
  return s;
}

std::vector<bool> component_table(const MonadMapSpec& alpha, const FinSet& x, const Row& t) {
  std::vector<bool> table(std::size_t{1} << x.size());
  for (Mask f = 0; f < table.size(); ++f) table[f] = alpha.evaluate(x, t, to_vector(f, x.size())) == 1;
  return table;
}

// ---------------------------------------------------------------------------

namespace {

const FinSet kOne("1", {"*"});

std::vector<Row> rows_for(MonadKind kind, std::size_t n, std::size_t samples, std::uint64_t bound, Sampler& sampler,
                          unsigned max_den = 16) {
  if (is_enumerable(kind)) {
    try {
      return enumerate_rows(kind, n, bound);
    } catch (const SizeGuardError&) {
      // fall through to sampling
    }
  }
  std::vector<Row> out;
  if ((kind == MonadKind::Dist || kind == MonadKind::CvDist) && n == 0) return out;
  for (std::size_t i = 0; i < samples; ++i) out.push_back(random_row(kind, n, sampler, max_den));
  return out;
}

std::vector<RationalVector> valuations_for(TruthCarrier carrier, std::size_t n, std::size_t grid_random,
                                           std::uint64_t seed) {
  std::vector<RationalVector> out;
  if (carrier == TruthCarrier::Boolean) {
    for (Mask f = 0; f < (Mask{1} << n); ++f) out.push_back(to_vector(f, n));
  } else {
    out = ProbeGrid::standard(n, seed, grid_random).predicates;
  }
  return out;
}

FinSet carrier_of_rows(std::size_t count) { return FinSet::range("T", count, "t"); }

// The carrier T X of the multiplication square becomes the target of a
// Kleisli arrow, so it is kept small; beyond this it is a sample.
constexpr std::size_t kMaxRowCarrier = 12;

std::vector<Row> row_carrier(std::vector<Row> rows) {
  if (rows.size() > kMaxRowCarrier) rows.resize(kMaxRowCarrier);
  return rows;
}

KleisliArrow rows_as_arrow(MonadKind kind, const FinSet& tx, const FinSet& x, const std::vector<Row>& rows) {
  return KleisliArrow(kind, tx, x, rows);
}

std::string rat(const Rational& q) { return to_string(q); }

Witness scalar_witness(std::string law, std::vector<std::string> args, const Rational& lhs, const Rational& rhs,
                       std::function<bool()> recheck) {
  return Witness{std::move(law), std::move(args), rat(lhs), rat(rhs), std::move(recheck)};
}

// all functions {0..m-1} -> {0..n-1}
std::vector<std::vector<std::size_t>> all_functions(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0 && m > 0) return out;
  std::vector<std::size_t> h(m, 0);
  while (true) {
    out.push_back(h);
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (++h[k] < n) break;
      h[k] = 0;
    }
    if (k == m) break;
  }
  return out;
}

}  // namespace

Verdict check_monad_map_laws(const MonadMapSpec& alpha, const std::vector<FinSet>& carriers,
                             const MonadMapLawOptions& options) {
  Sampler sampler(options.seed);
  std::size_t checked = 0;
  const MonadKind kind = alpha.source;
  const std::string name = alpha.name;

  // class membership of every component
  if (alpha.evaluation_form() && alpha.target_class) {
    for (const auto& x : carriers) {
      for (const Row& t : rows_for(kind, x.size(), options.samples, options.bound, sampler)) {
        Verdict v;
        const StructureClass cls = *alpha.target_class;
        if (alpha.carrier == TruthCarrier::Boolean) {
          BoolTransformer phi = BoolTransformer::from_function(x, kOne, [&](Mask f) -> Mask {
            return alpha.evaluate(x, t, to_vector(f, x.size())) == 1 ? 1 : 0;
          });
          v = check_structure(phi, cls);
        } else {
          auto eval = alpha.evaluate;
          RationalTransformer phi = RationalTransformer::pointwise(
              x, kOne, [eval, x, t](const RationalVector& p, std::size_t) { return eval(x, t, p); });
          v = check_structure(phi, cls, ProbeGrid::standard(x.size(), options.seed, options.grid_random));
        }
        checked += v.checked;
        if (v.unhealthy()) {
          v.witness->law =
              name + ": component is not a " + std::string(to_string(cls)) + " morphism; " + v.witness->law;
          v.witness->arguments.insert(v.witness->arguments.begin(), "t = " + describe_row(t, x));
          v.checked = checked;
          return v;
        }
      }
    }
  }

  // unit square
  for (const auto& x : carriers) {
    for (std::size_t e = 0; e < x.size(); ++e) {
      const Row eta = unit(kind, x, e);
      if (alpha.evaluation_form()) {
        for (const auto& g : valuations_for(alpha.carrier, x.size(), options.grid_random, options.seed)) {
          ++checked;
          auto ev = alpha.evaluate;
          auto recheck = [ev, x, eta, g, e] { return ev(x, eta, g) != g[static_cast<Eigen::Index>(e)]; };
          if (recheck()) {
            return Verdict::fail(scalar_witness(name + ": unit square alpha(eta(x))(g) = g(x)",
                                                {"x = " + x.label(e), "g = " + to_string(g)},
                                                ev(x, eta, g), g[static_cast<Eigen::Index>(e)], recheck),
                                 checked);
          }
        }
      } else {
        ++checked;
        auto tr = alpha.transform;
        const MonadKind target = *alpha.target_monad;
        auto recheck = [tr, x, eta, e, target] { return !rows_equal(tr(x, eta), unit(target, x, e)); };
        if (recheck()) {
          return Verdict::fail(Witness{name + ": unit square alpha(eta(x)) = eta'(x)", {"x = " + x.label(e)},
                                       describe_row(tr(x, eta), x), describe_row(unit(target, x, e), x), recheck},
                               checked);
        }
      }
    }
  }

  // naturality
  for (const auto& x : carriers)
    for (const auto& y : carriers) {
      const auto fns = all_functions(x.size(), y.size());
      if (fns.size() > options.bound) throw SizeGuardError("too many functions for the naturality check");
      const auto rows = rows_for(kind, x.size(), options.samples, options.bound, sampler);
      for (const auto& h : fns)
        for (const Row& t : rows) {
          const Row th = map_row(kind, t, h, y.size());
          std::string hs;
          for (std::size_t i = 0; i < h.size(); ++i) hs += (i ? "," : "") + x.label(i) + "->" + y.label(h[i]);
          if (alpha.evaluation_form()) {
            for (const auto& g : valuations_for(alpha.carrier, y.size(), options.grid_random, options.seed)) {
              ++checked;
              RationalVector gh(static_cast<Eigen::Index>(x.size()));
              for (std::size_t i = 0; i < x.size(); ++i)
                gh[static_cast<Eigen::Index>(i)] = g[static_cast<Eigen::Index>(h[i])];
              auto ev = alpha.evaluate;
              auto recheck = [ev, x, y, th, t, g, gh] { return ev(y, th, g) != ev(x, t, gh); };
              if (recheck()) {
                return Verdict::fail(scalar_witness(name + ": naturality alpha_Y(T h t)(g) = alpha_X(t)(g . h)",
                                                    {"h = " + hs, "t = " + describe_row(t, x), "g = " + to_string(g)},
                                                    ev(y, th, g), ev(x, t, gh), recheck),
                                     checked);
              }
            }
          } else {
            ++checked;
            auto tr = alpha.transform;
            const MonadKind target = *alpha.target_monad;
            auto recheck = [tr, x, y, t, th, h, target] {
              return !rows_equal(tr(y, th), map_row(target, tr(x, t), h, y.size()));
            };
            if (recheck()) {
              return Verdict::fail(Witness{name + ": naturality alpha_Y(T h t) = T' h (alpha_X t)",
                                           {"h = " + hs, "t = " + describe_row(t, x)}, describe_row(tr(y, th), y),
                                           describe_row(map_row(target, tr(x, t), h, y.size()), y), recheck},
                                   checked);
            }
          }
        }
    }

  // multiplication square, with mu expressed as a Kleisli composite
  for (const auto& x : carriers) {
    const auto txs = row_carrier(rows_for(kind, x.size(), options.samples, options.bound, sampler));
    if (txs.empty()) continue;
    const FinSet tx = carrier_of_rows(txs.size());
    const KleisliArrow inner = rows_as_arrow(kind, tx, x, txs);
    for (const Row& tt : rows_for(kind, tx.size(), options.samples, options.bound, sampler)) {
      const Row mu = kleisli_compose(point_arrow(kind, tx, tt), inner).row(0);
      if (alpha.evaluation_form()) {
        for (const auto& g : valuations_for(alpha.carrier, x.size(), options.grid_random, options.seed)) {
          ++checked;
          auto ev = alpha.evaluate;
          auto recheck = [ev, x, tx, txs, tt, mu, g] {
            RationalVector k(static_cast<Eigen::Index>(txs.size()));
            for (std::size_t i = 0; i < txs.size(); ++i) k[static_cast<Eigen::Index>(i)] = ev(x, txs[i], g);
            return ev(x, mu, g) != ev(tx, tt, k);
          };
          if (recheck()) {
            RationalVector k(static_cast<Eigen::Index>(txs.size()));
            for (std::size_t i = 0; i < txs.size(); ++i) k[static_cast<Eigen::Index>(i)] = ev(x, txs[i], g);
            return Verdict::fail(
                scalar_witness(name + ": multiplication square alpha(mu tt)(g) = alpha(tt)(ev_g . alpha)",
                               {"tt = " + describe_row(tt, tx), "g = " + to_string(g)}, ev(x, mu, g), ev(tx, tt, k),
                               recheck),
                checked);
          }
        }
      } else {
        ++checked;
        auto tr = alpha.transform;
        const MonadKind target = *alpha.target_monad;
        auto rhs_of = [tr, x, tx, txs, tt, target] {
          std::vector<Row> mapped;
          for (const Row& t : txs) mapped.push_back(tr(x, t));
          return kleisli_compose(point_arrow(target, tx, tr(tx, tt)), KleisliArrow(target, tx, x, mapped)).row(0);
        };
        auto recheck = [tr, x, mu, rhs_of] { return !rows_equal(tr(x, mu), rhs_of()); };
        if (recheck()) {
          return Verdict::fail(Witness{name + ": multiplication square alpha(mu tt) = mu'(T' alpha (alpha tt))",
                                       {"tt = " + describe_row(tt, tx)}, describe_row(tr(x, mu), x),
                                       describe_row(rhs_of(), x), recheck},
                               checked);
        }
      }
    }
  }
  return Verdict::pass(checked);
}

// ---------------------------------------------------------------------------

Verdict check_algebra_laws(const Modality& tau, const AlgebraLawOptions& options) {
  Sampler sampler(options.seed);
  const MonadKind kind = tau.monad;
  std::size_t checked = 0;

  std::vector<Rational> omegas;
  if (tau.carrier == TruthCarrier::Boolean) {
    omegas = {0, 1};
  } else {
    omegas = {0, 1};
    for (std::size_t i = 0; i < options.samples; ++i) omegas.push_back(sampler.unit_rational(16));
  }

  for (const Rational& w : omegas) {
    ++checked;
    RationalVector h(1);
    h[0] = w;
    auto recheck = [tau, kind, h, w] { return tau(push_forward(kind, unit(kind, kOne, 0), h)) != w; };
    if (recheck()) {
      return Verdict::fail(scalar_witness(tau.name + ": unit law tau(eta(w)) = w", {"w = " + rat(w)},
                                          tau(push_forward(kind, unit(kind, kOne, 0), h)), w, recheck),
                           checked);
    }
  }

  // Omega-valued carrier Z for the multiplication law
  std::vector<Rational> zvals = {0, 1};
  if (tau.carrier == TruthCarrier::RationalUnit)
    for (int i = 0; i < 3; ++i) zvals.push_back(sampler.unit_rational(16));
  const FinSet z = FinSet::range("Z", zvals.size(), "w");
  RationalVector zh(static_cast<Eigen::Index>(zvals.size()));
  for (std::size_t i = 0; i < zvals.size(); ++i) zh[static_cast<Eigen::Index>(i)] = zvals[i];

  const auto tzs = row_carrier(rows_for(kind, z.size(), options.samples, options.bound, sampler));
  if (tzs.empty()) return Verdict::pass(checked);
  const FinSet tz = carrier_of_rows(tzs.size());
  const KleisliArrow inner(kind, tz, z, tzs);
  RationalVector k(static_cast<Eigen::Index>(tzs.size()));
  for (std::size_t i = 0; i < tzs.size(); ++i) k[static_cast<Eigen::Index>(i)] = tau(push_forward(kind, tzs[i], zh));

  for (const Row& tt : rows_for(kind, tz.size(), options.samples, options.bound, sampler)) {
    ++checked;
    auto lhs_of = [tau, kind, tz, tt, inner, zh] {
      return tau(push_forward(kind, kleisli_compose(point_arrow(kind, tz, tt), inner).row(0), zh));
    };
    auto rhs_of = [tau, kind, tt, k] { return tau(push_forward(kind, tt, k)); };
    auto recheck = [lhs_of, rhs_of] { return lhs_of() != rhs_of(); };
    if (recheck()) {
      return Verdict::fail(scalar_witness(tau.name + ": multiplication law tau(mu tt) = tau(T tau tt)",
                                          {"tt = " + describe_row(tt, tz)}, lhs_of(), rhs_of(), recheck),
                           checked);
    }
  }
  return Verdict::pass(checked);
}

PredicateTransformer component_transformer(const Modality& tau, const FinSet& n, const Row& t) {
  const MonadKind kind = tau.monad;
  if (tau.carrier == TruthCarrier::Boolean) {
    return BoolTransformer::from_function(n, kOne, [&](Mask f) -> Mask {
      return tau(push_forward(kind, t, to_vector(f, n.size()))) == 1 ? 1 : 0;
    });
  }
  auto eval = tau.evaluate;
  return RationalTransformer::pointwise(
      n, kOne, [eval, kind, t](const RationalVector& p, std::size_t) { return eval(push_forward(kind, t, p)); },
      tau.name + " component");
}

Verdict lifting_check(const Modality& tau, StructureClass cls, std::size_t n_max, const LiftingOptions& options) {
  if (n_max < 1) throw std::invalid_argument("lifting_check needs n_max >= 1");
  if (is_boolean_class(cls) != (tau.carrier == TruthCarrier::Boolean)) {
    throw std::invalid_argument("structure class does not match the modality's truth carrier");
  }
  Sampler sampler(options.seed);
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const FinSet carrier = FinSet::range("n", n, "e");
    const ProbeGrid grid = ProbeGrid::standard(n, options.seed + n, options.grid_random);
    for (const Row& t : rows_for(tau.monad, n, options.samples, kDefaultEnumerationBound, sampler, options.max_den)) {
      PredicateTransformer phi = component_transformer(tau, carrier, t);
      Verdict v = std::holds_alternative<BoolTransformer>(phi)
                      ? check_structure(std::get<BoolTransformer>(phi), cls)
                      : check_structure(std::get<RationalTransformer>(phi), cls, grid);
      checked += v.checked;
      if (v.unhealthy()) {
        v.witness->arguments.insert(v.witness->arguments.begin(),
                                    {"n = " + std::to_string(n), "t = " + describe_row(t, carrier)});
        v.checked = checked;
        return v;
      }
      if (v.status == Status::Inconclusive) {
        v.checked = checked;
        return v;
      }
    }
  }
  return Verdict::pass(checked);
}

// ---------------------------------------------------------------------------

FiniteAlgebra free_powerset_algebra(const FinSet& y) {
  std::vector<std::string> labels;
  for (Mask s = 0; s < (Mask{1} << y.size()); ++s) {
    std::string l = "{";
    for (std::size_t i : members(s)) l += (l.size() > 1 ? "," : "") + y.label(i);
    labels.push_back(l + "}");
  }
  return FiniteAlgebra{MonadKind::Powerset, FinSet("P" + y.name(), std::move(labels)), [](const Row& r) {
                         Mask acc = 0;
                         for (std::size_t s : members(std::get<Subset>(r).elements)) acc |= static_cast<Mask>(s);
                         return static_cast<std::size_t>(acc);
                       }};
}

FiniteAlgebra truth_algebra(const Modality& tau) {
  if (tau.carrier != TruthCarrier::Boolean) throw std::invalid_argument("truth_algebra needs a Boolean modality");
  RationalVector id(2);
  id << Rational(0), Rational(1);
  const MonadKind kind = tau.monad;
  return FiniteAlgebra{kind, FinSet("2", {"0", "1"}), [tau, kind, id](const Row& r) {
                         return tau(push_forward(kind, r, id)) == 1 ? std::size_t{1} : std::size_t{0};
                       }};
}

std::vector<Mask> enumerate_algebra_morphisms(const FiniteAlgebra& a, const Modality& omega, std::uint64_t bound) {
  if (a.monad != omega.monad) throw std::invalid_argument("algebra and modality use different monads");
  if (omega.carrier != TruthCarrier::Boolean) throw std::invalid_argument("morphism enumeration needs Boolean Omega");
  const std::size_t n = a.carrier.size();
  if (n > 24 || (std::uint64_t{1} << n) > bound) throw SizeGuardError("too many candidate maps A -> Omega");
  const auto rows = enumerate_rows(a.monad, n, bound);
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    const RationalVector mv = to_vector(m, n);
    bool ok = std::all_of(rows.begin(), rows.end(), [&](const Row& t) {
      return Rational(has(m, a.structure(t)) ? 1 : 0) == omega(push_forward(a.monad, t, mv));
    });
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace wpb
