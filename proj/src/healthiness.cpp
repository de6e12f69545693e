#include "wpb/healthiness.hpp"

#include <map>
#include <mutex>
#include <set>

namespace wpb {

std::string_view to_string(StructureClass c) {
  switch (c) {
    case StructureClass::JoinLattice: return "CL_join";
    case StructureClass::MeetLattice: return "CL_meet";
    case StructureClass::Poset: return "Pos";
    case StructureClass::StrictMeetSemilattice: return "StrictCL_meet+";
    case StructureClass::GEMod: return "GEMod";
    case StructureClass::GEModDual: return "GEModDual";
    case StructureClass::EMod: return "EMod";
    case StructureClass::EModSublinear: return "EModSublinear";
  }
  return "?";
}

StructureClass parse_structure_class(std::string_view name) {
  for (auto c : {StructureClass::JoinLattice, StructureClass::MeetLattice, StructureClass::Poset,
                 StructureClass::StrictMeetSemilattice, StructureClass::GEMod, StructureClass::GEModDual,
                 StructureClass::EMod, StructureClass::EModSublinear}) {
    if (to_string(c) == name) return c;
  }
  throw InputError("unknown-class", "unknown structure class '" + std::string(name) + "'");
}

bool is_boolean_class(StructureClass c) {
  return c == StructureClass::JoinLattice || c == StructureClass::MeetLattice || c == StructureClass::Poset ||
         c == StructureClass::StrictMeetSemilattice;
}

// ---------------------------------------------------------------------------

std::vector<Rational> default_scalars() {
  return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

// A derived predicate p op q or r op p together with its grid position, if
// it is itself a grid member; then its image is read from the cache.
struct GridTerm {
  std::size_t i = 0;
  std::size_t j = 0;  // second predicate or scalar index
  RationalVector value;
  std::optional<std::size_t> index;
};

struct GridTables {
  std::size_t predicate_count = 0;
  std::size_t scalar_count = 0;
  std::vector<GridTerm> sums;         // p + q ≤ 1, i ≤ j
  std::vector<GridTerm> dual_sums;    // p + q - 1 ≥ 0, i ≤ j
  std::vector<GridTerm> scaled;       // r·p
  std::vector<GridTerm> dual_scaled;  // r·p + 1 - r
  std::vector<GridTerm> shifted;      // p + r ≤ 1
};

namespace {

std::shared_ptr<const GridTables> build_tables(const ProbeGrid& grid) {
  auto t = std::make_shared<GridTables>();
  t->predicate_count = grid.predicates.size();
  t->scalar_count = grid.scalars.size();
  auto less = [](const RationalVector& a, const RationalVector& b) { return lexicographic_less(a, b); };
  std::map<RationalVector, std::size_t, decltype(less)> where(less);
  for (std::size_t i = 0; i < grid.predicates.size(); ++i) where.emplace(grid.predicates[i], i);
  auto term = [&](std::size_t i, std::size_t j, RationalVector v) {
    auto it = where.find(v);
    return GridTerm{i, j, std::move(v), it == where.end() ? std::nullopt : std::optional<std::size_t>(it->second)};
  };
  const std::size_t n = grid.predicates.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      RationalVector s = grid.predicates[i] + grid.predicates[j];
      const bool below = (s.array() <= Rational(1)).all();
      const bool above = (s.array() >= Rational(1)).all();
      if (above) t->dual_sums.push_back(term(i, j, RationalVector(s.array() - Rational(1))));
      if (below) t->sums.push_back(term(i, j, std::move(s)));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < grid.scalars.size(); ++k) {
      const Rational& r = grid.scalars[k];
      const RationalVector& p = grid.predicates[i];
      t->scaled.push_back(term(i, k, RationalVector(r * p)));
      t->dual_scaled.push_back(term(i, k, RationalVector((r * p).array() + (Rational(1) - r))));
      RationalVector sh = p.array() + r;
      if ((sh.array() <= Rational(1)).all()) t->shifted.push_back(term(i, k, std::move(sh)));
    }
  return t;
}

std::shared_ptr<const GridTables> grid_tables(const ProbeGrid& grid) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!grid.tables || grid.tables->predicate_count != grid.predicates.size() ||
      grid.tables->scalar_count != grid.scalars.size())
    grid.tables = build_tables(grid);
  return grid.tables;
}

}  // namespace

ProbeGrid ProbeGrid::standard(std::size_t n, std::uint64_t seed, std::size_t random_count, unsigned max_den) {
  std::vector<RationalVector> base;
  for (std::size_t i = 0; i < n; ++i) base.push_back(dirac(n, i));
  base.push_back(constant(n, 0));
  base.push_back(constant(n, 1));
  Sampler sampler(seed);
  for (std::size_t i = 0; i < random_count; ++i) base.push_back(sampler.predicate(n, max_den));

  ProbeGrid grid;
  grid.seed = seed;
  grid.scalars = default_scalars();
  auto less = [](const RationalVector& a, const RationalVector& b) { return lexicographic_less(a, b); };
  std::set<RationalVector, decltype(less)> seen(less);
  auto add = [&](const RationalVector& p) {
    if (seen.insert(p).second) grid.predicates.push_back(p);
  };
  for (const auto& p : base) add(p);
  const RationalVector one = constant(n, 1);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      RationalVector s = base[i] + base[j];
      if (leq(s, one)) add(s);
    }
  return grid;
}

ProbeGrid ProbeGrid::custom(std::vector<RationalVector> predicates, std::vector<Rational> scalars) {
  for (const auto& p : predicates)
    if (!in_unit_cube(p)) throw InputError("probe-out-of-range", "probe predicate outside [0,1]");
  for (const auto& r : scalars)
    if (!in_unit_interval(r)) throw InputError("probe-out-of-range", "probe scalar outside [0,1]");
  return ProbeGrid{std::move(predicates), std::move(scalars), 0, nullptr};
}

bool ProbeGrid::meets_minimum(std::size_t n) const {
  auto present = [&](const RationalVector& q) {
    for (const auto& p : predicates)
      if (equal(p, q)) return true;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (!present(dirac(n, i))) return false;
  return present(constant(n, 0)) && present(constant(n, 1));
}

// ---------------------------------------------------------------------------
// Boolean

namespace {

std::string law_name(BoolLaw law) {
  switch (law) {
    case BoolLaw::Bottom: return "preserves bottom: phi(0) = 0";
    case BoolLaw::Top: return "preserves top: phi(1) = 1";
    case BoolLaw::BinaryJoin: return "preserves binary joins: phi(f ∨ g) = phi(f) ∨ phi(g)";
    case BoolLaw::BinaryMeet: return "preserves binary meets: phi(f ∧ g) = phi(f) ∧ phi(g)";
    case BoolLaw::Monotone: return "monotone: f ≤ g implies phi(f) ≤ phi(g)";
  }
  return "?";
}

// Evaluates both sides of a Boolean law instance.
std::pair<Mask, Mask> sides(const BoolTransformer& phi, const BoolLawViolation& v) {
  const Mask full_y = phi.source.full_mask();
  const Mask full_x = phi.target.full_mask();
  switch (v.law) {
    case BoolLaw::Bottom: return {phi(0), 0};
    case BoolLaw::Top: return {phi(full_y), full_x};
    case BoolLaw::BinaryJoin: return {phi(v.f | v.g), phi(v.f) | phi(v.g)};
    case BoolLaw::BinaryMeet: return {phi(v.f & v.g), phi(v.f) & phi(v.g)};
    case BoolLaw::Monotone: return {phi(v.f), phi(v.f) & phi(v.g)};  // phi(f) ≤ phi(g) iff phi(f) = phi(f) ∧ phi(g)
  }
  return {0, 0};
}

std::string coord_list(Mask a, Mask b, const FinSet& x) {
  std::string s;
  for (std::size_t i : members(a ^ b)) s += (s.empty() ? "" : ",") + x.label(i);
  return s;
}

Verdict bool_verdict(const BoolTransformer& phi, const std::optional<BoolLawViolation>& v, std::size_t checked) {
  if (!v) return Verdict::pass(checked);
  const auto [lhs, rhs] = sides(phi, *v);
  const std::size_t ny = phi.source.size();
  const std::size_t nx = phi.target.size();
  Witness w;
  w.law = law_name(v->law);
  if (v->law == BoolLaw::BinaryJoin || v->law == BoolLaw::BinaryMeet || v->law == BoolLaw::Monotone) {
    w.arguments.push_back("f = " + bitstring(v->f, ny));
    w.arguments.push_back("g = " + bitstring(v->g, ny));
  }
  w.arguments.push_back("differs at " + coord_list(lhs, rhs, phi.target));
  w.lhs = bitstring(lhs, nx);
  w.rhs = bitstring(rhs, nx);
  w.recheck = [phi, v = *v] {
    const auto [l, r] = sides(phi, v);
    return l != r;
  };
  return Verdict::fail(std::move(w), checked);
}

// Counts law instances the same way the finder visits them.
struct Counter {
  std::size_t n = 0;
};

std::optional<BoolLawViolation> join_scan(const BoolTransformer& phi, Counter* c) {
  const Mask rows = phi.table.size();
  if (c) ++c->n;
  if (phi(0) != 0) return BoolLawViolation{BoolLaw::Bottom};
  for (Mask f = 0; f < rows; ++f)
    for (Mask g = f + 1; g < rows; ++g) {
      if (c) ++c->n;
      if (phi(f | g) != (phi(f) | phi(g))) return BoolLawViolation{BoolLaw::BinaryJoin, f, g};
    }
  return std::nullopt;
}

std::optional<BoolLawViolation> meet_scan(const BoolTransformer& phi, Counter* c, bool strict) {
  const Mask rows = phi.table.size();
  if (c) ++c->n;
  if (strict) {
    if (phi(0) != 0) return BoolLawViolation{BoolLaw::Bottom};
  } else if (phi(phi.source.full_mask()) != phi.target.full_mask()) {
    return BoolLawViolation{BoolLaw::Top};
  }
  for (Mask f = 0; f < rows; ++f)
    for (Mask g = f + 1; g < rows; ++g) {
      if (c) ++c->n;
      if (phi(f & g) != (phi(f) & phi(g))) return BoolLawViolation{BoolLaw::BinaryMeet, f, g};
    }
  return std::nullopt;
}

std::optional<BoolLawViolation> monotone_scan(const BoolTransformer& phi, Counter* c) {
  const Mask rows = phi.table.size();
  const Mask full = phi.source.full_mask();
  for (Mask f = 0; f < rows; ++f) {
    // covering pairs f < f ∪ {y} suffice for monotonicity
    for (std::size_t y : members(full & ~f)) {
      const Mask g = f | bit(y);
      if (c) ++c->n;
      if ((phi(f) & ~phi(g)) != 0) return BoolLawViolation{BoolLaw::Monotone, f, g};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<BoolLawViolation> find_join_violation(const BoolTransformer& phi) { return join_scan(phi, nullptr); }
std::optional<BoolLawViolation> find_meet_violation(const BoolTransformer& phi) {
  return meet_scan(phi, nullptr, false);
}
std::optional<BoolLawViolation> find_monotone_violation(const BoolTransformer& phi) {
  return monotone_scan(phi, nullptr);
}
std::optional<BoolLawViolation> find_strict_meets_violation(const BoolTransformer& phi) {
  return meet_scan(phi, nullptr, true);
}

Verdict check_join_preserving(const BoolTransformer& phi) {
  Counter c;
  auto v = join_scan(phi, &c);
  return bool_verdict(phi, v, c.n);
}

Verdict check_meet_preserving(const BoolTransformer& phi) {
  Counter c;
  auto v = meet_scan(phi, &c, false);
  return bool_verdict(phi, v, c.n);
}

Verdict check_monotone(const BoolTransformer& phi) {
  Counter c;
  auto v = monotone_scan(phi, &c);
  return bool_verdict(phi, v, c.n);
}

Verdict check_strict_nonempty_meets(const BoolTransformer& phi) {
  Counter c;
  auto v = meet_scan(phi, &c, true);
  return bool_verdict(phi, v, c.n);
}

Mask finitary_support(const BoolTransformer& phi, std::size_t x) {
  Mask support = 0;
  for (std::size_t y = 0; y < phi.source.size(); ++y) {
    for (Mask f = 0; f < phi.table.size(); ++f) {
      if (has(phi(f), x) != has(phi(f ^ bit(y)), x)) {
        support |= bit(y);
        break;
      }
    }
  }
  if (!factors_through(phi, x, support)) {
    // single toggles found nothing more; fall back to the whole carrier
    return phi.source.full_mask();
  }
  return support;
}

bool factors_through(const BoolTransformer& phi, std::size_t x, Mask support) {
  for (Mask f = 0; f < phi.table.size(); ++f)
    if (has(phi(f), x) != has(phi(f & support), x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rational

namespace {

struct RationalLaw {
  std::string name;
  std::vector<std::string> arguments;
  RationalVector lhs;
  RationalVector rhs;
  bool inequality = false;  // lhs ≤ rhs required instead of equality
};

bool violated(const RationalLaw& law) {
  return law.inequality ? !leq(law.lhs, law.rhs) : !equal(law.lhs, law.rhs);
}

std::string first_bad_coordinate(const RationalLaw& law, const FinSet& x) {
  for (Eigen::Index i = 0; i < law.lhs.size(); ++i) {
    bool bad = law.inequality ? law.lhs[i] > law.rhs[i] : law.lhs[i] != law.rhs[i];
    if (bad) return x.label(static_cast<std::size_t>(i));
  }
  return "?";
}

// Recomputes a law instance from its concrete arguments.
using LawBuilder = std::function<RationalLaw(const RationalTransformer&)>;

Verdict rational_failure(const RationalTransformer& phi, const LawBuilder& build, std::size_t checked) {
  RationalLaw law = build(phi);
  Witness w;
  w.law = law.name;
  w.arguments = law.arguments;
  w.arguments.push_back("at " + first_bad_coordinate(law, phi.target));
  w.lhs = to_string(law.lhs);
  w.rhs = to_string(law.rhs);
  w.recheck = [phi, build] { return violated(build(phi)); };
  return Verdict::fail(std::move(w), checked);
}

std::string arg(const char* name, const RationalVector& p) { return std::string(name) + " = " + to_string(p); }
std::string arg(const char* name, const Rational& r) { return std::string(name) + " = " + to_string(r); }

class GridRun {
 public:
  GridRun(const RationalTransformer& phi, const ProbeGrid& grid)
      : phi_(phi), grid_(grid), tables_(grid_tables(grid)) {
    const std::size_t nx = phi.target.size();
    one_x_ = constant(nx, 1);
    zero_x_ = constant(nx, 0);
  }

  // Each law check returns a failing verdict or nothing.
  std::optional<Verdict> check(const LawBuilder& build) {
    ++checked_;
    RationalLaw law = build(phi_);
    if (violated(law)) return rational_failure(phi_, build, checked_);
    return std::nullopt;
  }

  void count() { ++checked_; }
  Verdict fail(const LawBuilder& build) const { return rational_failure(phi_, build, checked_); }
  const RationalTransformer& phi() const { return phi_; }

  const RationalVector& value(std::size_t i) {
    if (cache_.size() != grid_.predicates.size()) cache_.resize(grid_.predicates.size());
    if (!cache_[i]) cache_[i] = phi_(grid_.predicates[i]);
    return *cache_[i];
  }

  std::optional<Verdict> range() {
    for (std::size_t i = 0; i < grid_.predicates.size(); ++i) {
      ++checked_;
      const RationalVector& v = value(i);
      if (static_cast<std::size_t>(v.size()) != phi_.target.size() || !in_unit_cube(v)) {
        const RationalVector p = grid_.predicates[i];
        return rational_failure(
            phi_,
            [p](const RationalTransformer& t) {
              RationalVector out = t(p);
              RationalVector clipped = out;
              for (Eigen::Index k = 0; k < clipped.size(); ++k) {
                if (clipped[k] < 0) clipped[k] = 0;
                if (clipped[k] > 1) clipped[k] = 1;
              }
              return RationalLaw{"output lies in [0,1]", {arg("p", p)}, out, clipped, false};
            },
            checked_);
      }
    }
    return std::nullopt;
  }

  Verdict finish() const {
    if (!grid_.meets_minimum(phi_.source.size())) {
      return Verdict::inconclusive(checked_, "probe grid lacks Dirac or constant predicates");
    }
    return Verdict::pass(checked_, "confirmed on the probe grid only");
  }

  const GridTables& tables() const { return *tables_; }

  // phi at a derived predicate, from the cache when it is a grid member.
  const RationalVector& image(const GridTerm& term, RationalVector& scratch) {
    if (term.index) return value(*term.index);
    scratch = phi_(term.value);
    return scratch;
  }

  std::size_t size() const { return grid_.predicates.size(); }
  const RationalVector& predicate(std::size_t i) const { return grid_.predicates[i]; }
  const std::vector<Rational>& scalars() const { return grid_.scalars; }
  const RationalVector& one_x() const { return one_x_; }
  const RationalVector& zero_x() const { return zero_x_; }
  std::size_t ny() const { return phi_.source.size(); }

 private:
  const RationalTransformer& phi_;
  const ProbeGrid& grid_;
  std::shared_ptr<const GridTables> tables_;
  std::vector<std::optional<RationalVector>> cache_;
  RationalVector one_x_;
  RationalVector zero_x_;
  std::size_t checked_ = 0;
};

// Laws of the total GEMod structure on [0,1]^n. Cached grid values give the
// fast path; a failing instance is rebuilt as a self-contained law.
std::optional<Verdict> total_gemod_laws(GridRun& run, bool with_unit) {
  const std::size_t ny = run.ny();
  if (auto v = run.check([ny](const RationalTransformer& t) {
        return RationalLaw{"preserves zero: phi(0) = 0", {}, t(constant(ny, 0)), constant(t.target.size(), 0)};
      }))
    return v;
  if (with_unit) {
    if (auto v = run.check([ny](const RationalTransformer& t) {
          return RationalLaw{"preserves unit: phi(1) = 1", {}, t(constant(ny, 1)), constant(t.target.size(), 1)};
        }))
      return v;
  }
  RationalVector scratch;
  for (const GridTerm& term : run.tables().sums) {
    const RationalVector& p = run.predicate(term.i);
    const RationalVector& q = run.predicate(term.j);
    const RationalVector a = run.value(term.i) + run.value(term.j);
    run.count();
    if (!leq(a, run.one_x())) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"images of a defined sum are summable: phi(p) + phi(q) ≤ 1",
                           {arg("p", p), arg("q", q)}, RationalVector(t(p) + t(q)), constant(t.target.size(), 1), true};
      });
    }
    run.count();
    if (!equal(run.image(term, scratch), a)) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"preserves defined sums: phi(p ⊻ q) = phi(p) ⊻ phi(q)",
                           {arg("p", p), arg("q", q)}, t(RationalVector(p + q)), RationalVector(t(p) + t(q))};
      });
    }
  }
  for (const GridTerm& term : run.tables().scaled) {
    const RationalVector& p = run.predicate(term.i);
    const Rational& r = run.scalars()[term.j];
    run.count();
    if (!equal(run.image(term, scratch), RationalVector(r * run.value(term.i)))) {
      return run.fail([p, r](const RationalTransformer& t) {
        return RationalLaw{"preserves scalars: phi(r·p) = r·phi(p)", {arg("p", p), arg("r", r)},
                           t(RationalVector(r * p)), RationalVector(r * t(p))};
      });
    }
  }
  return std::nullopt;
}

RationalVector dual_sum(const RationalVector& a, const RationalVector& b) {
  return (a + b).array() - Rational(1);
}

RationalVector dual_scale(const Rational& r, const RationalVector& a) {
  return (r * a).array() + (Rational(1) - r);
}

std::optional<Verdict> partial_gemod_laws(GridRun& run) {
  const std::size_t ny = run.ny();
  if (auto v = run.check([ny](const RationalTransformer& t) {
        return RationalLaw{"preserves the dual zero: phi(1) = 1", {}, t(constant(ny, 1)), constant(t.target.size(), 1)};
      }))
    return v;
  RationalVector scratch;
  for (const GridTerm& term : run.tables().dual_sums) {
    const RationalVector& p = run.predicate(term.i);
    const RationalVector& q = run.predicate(term.j);
    const RationalVector a = dual_sum(run.value(term.i), run.value(term.j));
    run.count();
    if (!leq(run.zero_x(), a)) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"images of a defined dual sum are summable: phi(p) + phi(q) - 1 ≥ 0",
                           {arg("p", p), arg("q", q)}, constant(t.target.size(), 0), dual_sum(t(p), t(q)), true};
      });
    }
    run.count();
    if (!equal(run.image(term, scratch), a)) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"preserves dual sums: phi(p + q - 1) = phi(p) + phi(q) - 1",
                           {arg("p", p), arg("q", q)}, t(dual_sum(p, q)), dual_sum(t(p), t(q))};
      });
    }
  }
  for (const GridTerm& term : run.tables().dual_scaled) {
    const RationalVector& p = run.predicate(term.i);
    const Rational& r = run.scalars()[term.j];
    run.count();
    if (!equal(run.image(term, scratch), dual_scale(r, run.value(term.i)))) {
      return run.fail([p, r](const RationalTransformer& t) {
        return RationalLaw{"preserves dual scalars: phi(r·p + 1 - r) = r·phi(p) + 1 - r",
                           {arg("p", p), arg("r", r)}, t(dual_scale(r, p)), dual_scale(r, t(p))};
      });
    }
  }
  return std::nullopt;
}

std::optional<Verdict> sublinear_laws(GridRun& run) {
  RationalVector scratch;
  for (const GridTerm& term : run.tables().sums) {
    const RationalVector& p = run.predicate(term.i);
    const RationalVector& q = run.predicate(term.j);
    const RationalVector a = run.value(term.i) + run.value(term.j);
    run.count();
    if (!leq(a, run.one_x())) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"subadditivity: orthogonal arguments have orthogonal images",
                           {arg("p", p), arg("q", q)}, RationalVector(t(p) + t(q)), constant(t.target.size(), 1), true};
      });
    }
    run.count();
    if (!leq(a, run.image(term, scratch))) {
      return run.fail([p, q](const RationalTransformer& t) {
        return RationalLaw{"subadditivity: phi(p) ⊻ phi(q) ≤ phi(p ⊻ q)", {arg("p", p), arg("q", q)},
                           RationalVector(t(p) + t(q)), t(RationalVector(p + q)), true};
      });
    }
  }
  for (const GridTerm& term : run.tables().scaled) {
    const RationalVector& p = run.predicate(term.i);
    const Rational& r = run.scalars()[term.j];
    run.count();
    if (!equal(run.image(term, scratch), RationalVector(r * run.value(term.i)))) {
      return run.fail([p, r](const RationalTransformer& t) {
        return RationalLaw{"scaling: phi(r·p) = r·phi(p)", {arg("p", p), arg("r", r)}, t(RationalVector(r * p)),
                           RationalVector(r * t(p))};
      });
    }
  }
  for (const GridTerm& term : run.tables().shifted) {
    const RationalVector& p = run.predicate(term.i);
    const Rational& r = run.scalars()[term.j];
    run.count();
    RationalVector expected = run.value(term.i).array() + r;
    if (!equal(run.image(term, scratch), expected)) {
      return run.fail([p, r](const RationalTransformer& t) {
        RationalVector sp = p.array() + r;
        RationalVector rhs = t(p).array() + r;
        return RationalLaw{"translation: phi(p ⊻ r·1) = phi(p) ⊻ r·1", {arg("p", p), arg("r", r)}, t(sp), rhs};
      });
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict check_gemod_morphism(const RationalTransformer& phi, const ProbeGrid& grid, GemodVariant variant) {
  GridRun run(phi, grid);
  if (auto v = run.range()) return *v;
  if (auto v = variant == GemodVariant::Total ? total_gemod_laws(run, false) : partial_gemod_laws(run)) return *v;
  return run.finish();
}

Verdict check_emod_morphism(const RationalTransformer& phi, const ProbeGrid& grid) {
  GridRun run(phi, grid);
  if (auto v = run.range()) return *v;
  if (auto v = total_gemod_laws(run, true)) return *v;
  return run.finish();
}

Verdict check_regular_sublinear(const RationalTransformer& phi, const ProbeGrid& grid) {
  GridRun run(phi, grid);
  if (auto v = run.range()) return *v;
  if (auto v = sublinear_laws(run)) return *v;
  return run.finish();
}

// ---------------------------------------------------------------------------

Verdict check_structure(const BoolTransformer& phi, StructureClass c) {
  switch (c) {
    case StructureClass::JoinLattice: return check_join_preserving(phi);
    case StructureClass::MeetLattice: return check_meet_preserving(phi);
    case StructureClass::Poset: return check_monotone(phi);
    case StructureClass::StrictMeetSemilattice: return check_strict_nonempty_meets(phi);
    default: throw std::invalid_argument(std::string(to_string(c)) + " is not a Boolean structure class");
  }
}

Verdict check_structure(const RationalTransformer& phi, StructureClass c, const ProbeGrid& grid) {
  switch (c) {
    case StructureClass::GEMod: return check_gemod_morphism(phi, grid, GemodVariant::Total);
    case StructureClass::GEModDual: return check_gemod_morphism(phi, grid, GemodVariant::Partial);
    case StructureClass::EMod: return check_emod_morphism(phi, grid);
    case StructureClass::EModSublinear: return check_regular_sublinear(phi, grid);
    default: throw std::invalid_argument(std::string(to_string(c)) + " is not a rational structure class");
  }
}

Verdict check_condition(const PredicateTransformer& phi, std::string_view condition, const ProbeGrid* grid) {
  if (condition == "finitary") {
    if (const auto* b = std::get_if<BoolTransformer>(&phi)) {
      std::string note = "supports:";
      for (std::size_t x = 0; x < b->target.size(); ++x) {
        note += " " + b->target.label(x) + "->{";
        bool first = true;
        for (std::size_t y : members(finitary_support(*b, x))) {
          note += (first ? "" : ",") + b->source.label(y);
          first = false;
        }
        note += "}";
      }
      return Verdict::pass(b->target.size(), note);
    }
    return Verdict::pass(0, "finite carrier: every coordinate depends on finitely many inputs");
  }
  static const std::map<std::string_view, StructureClass> boolean = {
      {"join", StructureClass::JoinLattice},
      {"meet", StructureClass::MeetLattice},
      {"monotone", StructureClass::Poset},
      {"strict_meets", StructureClass::StrictMeetSemilattice}};
  static const std::map<std::string_view, StructureClass> rational = {
      {"gemod_total", StructureClass::GEMod},
      {"gemod_partial", StructureClass::GEModDual},
      {"emod", StructureClass::EMod},
      {"regular_sublinear", StructureClass::EModSublinear}};
  if (auto it = boolean.find(condition); it != boolean.end()) {
    const auto* b = std::get_if<BoolTransformer>(&phi);
    if (!b)
      throw InputError("carrier-mismatch", "condition '" + std::string(condition) + "' needs a Boolean transformer");
    return check_structure(*b, it->second);
  }
  if (auto it = rational.find(condition); it != rational.end()) {
    const auto* r = std::get_if<RationalTransformer>(&phi);
    if (!r)
      throw InputError("carrier-mismatch", "condition '" + std::string(condition) + "' needs a rational transformer");
    if (!grid) throw std::invalid_argument("rational condition needs a probe grid");
    return check_structure(*r, it->second, *grid);
  }
  throw InputError("unknown-condition", "unknown condition '" + std::string(condition) + "'");
}

}  // namespace wpb
