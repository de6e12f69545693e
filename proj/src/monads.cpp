#include "wpb/monads.hpp"

#include "wpb/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace wpb {

std::string_view to_string(MonadKind k) {
  switch (k) {
    case MonadKind::Powerset: return "powerset";
    case MonadKind::NonemptyPowersetLift: return "nonempty_powerset_lift";
    case MonadKind::SubDist: return "subdist";
    case MonadKind::Dist: return "dist";
    case MonadKind::UpPowerset: return "up_powerset";
    case MonadKind::CvDist: return "cv_dist";
  }
  return "?";
}

MonadKind parse_monad(std::string_view name) {
  for (MonadKind k : kAllMonads)
    if (to_string(k) == name) return k;
  throw InputError("unknown-monad", "unknown monad '" + std::string(name) + "'");
}

bool is_enumerable(MonadKind k) {
  return k == MonadKind::Powerset || k == MonadKind::NonemptyPowersetLift || k == MonadKind::UpPowerset;
}

// ---------------------------------------------------------------------------

namespace {

// Duplicates removed; in up to three coordinates (a triangle of
// distributions) only extreme points are kept, which is cheap there.
std::vector<RationalVector> hull_vertices(std::vector<RationalVector> vs) {
  vs = dedupe_vertices(std::move(vs));
  if (vs.empty() || vs.front().size() > 3) return vs;
  std::vector<RationalVector> out;
  for (std::size_t i : polytope::extreme_points<Rational>(vs)) out.push_back(vs[i]);
  return out;
}

// Same convex set: every listed point of one lies in the hull of the other.
bool same_vertex_set(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b) {
  auto covered = [](const std::vector<RationalVector>& from, const std::vector<RationalVector>& into) {
    if (into.empty()) return from.empty();
    std::vector<std::size_t> all(into.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return std::all_of(from.begin(), from.end(), [&](const RationalVector& v) {
      if (std::any_of(into.begin(), into.end(), [&](const RationalVector& w) { return equal(v, w); })) return true;
      return polytope::in_hull<Rational>(v, into, all);
    });
  };
  return covered(a, b) && covered(b, a);
}

std::string set_string(Mask m, const FinSet& target, bool bottom = false) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : members(m)) {
    if (!first) s += ",";
    s += i < target.size() ? target.label(i) : std::to_string(i);
    first = false;
  }
  if (bottom) s += first ? "⊥" : ",⊥";
  return s + "}";
}

std::string weights_string(const RationalVector& w, const FinSet& target) {
  std::string s;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (!s.empty()) s += " + ";
    auto idx = static_cast<std::size_t>(i);
    s += to_string(w[i]) + "·" + (idx < target.size() ? target.label(idx) : std::to_string(idx));
  }
  return s.empty() ? "0" : s;
}

Mask carrier_mask(std::size_t n) { return n == 0 ? Mask{0} : (Mask{1} << n) - 1; }

}  // namespace

bool rows_equal(const Row& a, const Row& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Subset>) {
          return x.elements == y.elements;
        } else if constexpr (std::is_same_v<T, LiftedSubset>) {
          return x.elements == y.elements && x.bottom == y.bottom;
        } else if constexpr (std::is_same_v<T, Weights>) {
          return equal(x.mass, y.mass);
        } else if constexpr (std::is_same_v<T, UpFamily>) {
          return x.members == y.members;
        } else {
          return same_vertex_set(x.vertices, y.vertices);
        }
      },
      a);
}

std::string describe_row(const Row& row, const FinSet& target) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Subset>) {
          return set_string(x.elements, target);
        } else if constexpr (std::is_same_v<T, LiftedSubset>) {
          return set_string(x.elements, target, x.bottom);
        } else if constexpr (std::is_same_v<T, Weights>) {
          return weights_string(x.mass, target);
        } else if constexpr (std::is_same_v<T, UpFamily>) {
          std::string s = "{";
          for (std::size_t i = 0; i < x.members.size(); ++i) {
            if (i) s += ",";
            s += set_string(x.members[i], target);
          }
          return s + "}";
        } else {
          std::string s = "conv[";
          for (std::size_t i = 0; i < x.vertices.size(); ++i) {
            if (i) s += "; ";
            s += weights_string(x.vertices[i], target);
          }
          return s + "]";
        }
      },
      row);
}

UpFamily up_closure(const std::vector<Mask>& family, std::size_t n) {
  const Mask full = carrier_mask(n);
  std::set<Mask> closed;
  for (Mask s : family) {
    // every superset of s: s | t for t ranging over subsets of the complement
    const Mask rest = full & ~s;
    Mask t = rest;
    while (true) {
      closed.insert(s | t);
      if (t == 0) break;
      t = (t - 1) & rest;
    }
  }
  return UpFamily{std::vector<Mask>(closed.begin(), closed.end())};
}

bool is_up_closed(const std::vector<Mask>& family, std::size_t n) {
  std::set<Mask> present(family.begin(), family.end());
  for (Mask s : family) {
    for (std::size_t i = 0; i < n; ++i)
      if (!present.count(s | bit(i))) return false;
  }
  return true;
}

std::vector<RationalVector> dedupe_vertices(std::vector<RationalVector> vertices) {
  std::vector<RationalVector> out;
  for (auto& v : vertices) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const RationalVector& w) { return equal(v, w); });
    if (!dup) out.push_back(std::move(v));
  }
  return out;
}

namespace {

void validate_weights(const RationalVector& w, std::size_t n, bool total, const std::string& where) {
  if (static_cast<std::size_t>(w.size()) != n) {
    throw InputError("row-size", where + ": weight vector has the wrong length");
  }
  Rational sum = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0) throw InputError("negative-probability", where + ": negative probability");
    if (w[i] > 1) throw InputError("probability-exceeds-one", where + ": probability exceeds one");
    sum += w[i];
  }
  if (sum > 1) throw InputError("mass-exceeds-one", where + ": mass exceeds one (" + to_string(sum) + ")");
  if (total && sum != 1) throw InputError("mass-not-one", where + ": mass is " + to_string(sum) + ", not one");
}

}  // namespace

void validate_row(MonadKind kind, const Row& row, std::size_t n) {
  const std::string where(to_string(kind));
  const Mask full = carrier_mask(n);
  switch (kind) {
    case MonadKind::Powerset: {
      const auto* s = std::get_if<Subset>(&row);
      if (!s) throw InputError("row-kind-mismatch", where + ": expected a subset row");
      if (s->elements & ~full) throw InputError("element-out-of-range", where + ": element out of range");
      return;
    }
    case MonadKind::NonemptyPowersetLift: {
      const auto* s = std::get_if<LiftedSubset>(&row);
      if (!s) throw InputError("row-kind-mismatch", where + ": expected a lifted subset row");
      if (s->elements & ~full) throw InputError("element-out-of-range", where + ": element out of range");
      if (s->elements == 0 && !s->bottom) throw InputError("empty-row", where + ": row must be nonempty");
      return;
    }
    case MonadKind::SubDist:
    case MonadKind::Dist: {
      const auto* w = std::get_if<Weights>(&row);
      if (!w) throw InputError("row-kind-mismatch", where + ": expected a weights row");
      validate_weights(w->mass, n, kind == MonadKind::Dist, where);
      return;
    }
    case MonadKind::UpPowerset: {
      const auto* u = std::get_if<UpFamily>(&row);
      if (!u) throw InputError("row-kind-mismatch", where + ": expected an up-closed family");
      for (Mask m : u->members)
        if (m & ~full) throw InputError("element-out-of-range", where + ": element out of range");
      if (!std::is_sorted(u->members.begin(), u->members.end()) ||
          std::adjacent_find(u->members.begin(), u->members.end()) != u->members.end()) {
        throw InputError("unsorted-family", where + ": family members must be sorted and distinct");
      }
      if (!is_up_closed(u->members, n)) throw InputError("not-up-closed", where + ": family is not up-closed");
      return;
    }
    case MonadKind::CvDist: {
      const auto* p = std::get_if<DistributionPolytope>(&row);
      if (!p) throw InputError("row-kind-mismatch", where + ": expected a polytope row");
      if (p->vertices.empty()) throw InputError("empty-polytope", where + ": polytope needs a vertex");
      for (const auto& v : p->vertices) validate_weights(v, n, true, where);
      return;
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

Row normalize(MonadKind kind, Row row) {
  if (kind == MonadKind::UpPowerset) {
    auto& u = std::get<UpFamily>(row);
    std::sort(u.members.begin(), u.members.end());
    u.members.erase(std::unique(u.members.begin(), u.members.end()), u.members.end());
  } else if (kind == MonadKind::CvDist) {
    auto& p = std::get<DistributionPolytope>(row);
    p.vertices = dedupe_vertices(std::move(p.vertices));
  }
  return row;
}

}  // namespace

KleisliArrow::KleisliArrow(MonadKind monad, FinSet source, FinSet target, std::vector<Row> rows)
    : monad_(monad), source_(std::move(source)), target_(std::move(target)) {
  if (rows.size() != source_.size()) {
    throw InputError("row-count", "arrow needs one row per element of '" + source_.name() + "'");
  }
  if (target_.size() > kMaxMaskCarrier) throw SizeGuardError("target carrier too large");
  rows_.reserve(rows.size());
  for (auto& r : rows) {
    Row n = std::holds_alternative<UpFamily>(r) || std::holds_alternative<DistributionPolytope>(r)
                ? normalize(monad_, std::move(r))
                : std::move(r);
    validate_row(monad_, n, target_.size());
    rows_.push_back(std::move(n));
  }
}

KleisliArrow::KleisliArrow(MonadKind monad, FinSet source, FinSet target, const RationalMatrix& m)
    : monad_(monad), source_(std::move(source)), target_(std::move(target)) {
  if (monad_ != MonadKind::SubDist && monad_ != MonadKind::Dist) {
    throw std::invalid_argument("matrix construction needs a probabilistic monad");
  }
  if (static_cast<std::size_t>(m.rows()) != source_.size() ||
      static_cast<std::size_t>(m.cols()) != target_.size()) {
    throw InputError("row-count", "matrix shape does not match the carriers");
  }
  rows_.reserve(source_.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Row r = Weights{m.row(i).transpose()};
    validate_row(monad_, r, target_.size());
    rows_.push_back(std::move(r));
  }
}

RationalMatrix KleisliArrow::matrix() const {
  if (monad_ != MonadKind::SubDist && monad_ != MonadKind::Dist) {
    throw std::invalid_argument("matrix view needs a probabilistic monad");
  }
  RationalMatrix m(static_cast<Eigen::Index>(source_.size()), static_cast<Eigen::Index>(target_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = std::get<Weights>(rows_[i]).mass.transpose();
  return m;
}

bool operator==(const KleisliArrow& a, const KleisliArrow& b) {
  if (a.monad_ != b.monad_ || !(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    if (!rows_equal(a.rows_[i], b.rows_[i])) return false;
  return true;
}

std::string describe(const KleisliArrow& f) {
  std::string s = std::string(to_string(f.monad())) + " arrow " + f.source().name() + " -> " +
                  f.target().name() + "\n";
  for (std::size_t x = 0; x < f.source().size(); ++x)
    s += "  " + f.source().label(x) + " |-> " + describe_row(f.row(x), f.target()) + "\n";
  return s;
}

// ---------------------------------------------------------------------------

Row unit(MonadKind kind, const FinSet& x, std::size_t element) {
  if (element >= x.size()) throw InputError("unknown-element", "element index out of range");
  const std::size_t n = x.size();
  switch (kind) {
    case MonadKind::Powerset: return Subset{bit(element)};
    case MonadKind::NonemptyPowersetLift: return LiftedSubset{bit(element), false};
    case MonadKind::SubDist:
    case MonadKind::Dist: return Weights{dirac(n, element)};
    case MonadKind::UpPowerset: return up_closure({bit(element)}, n);
    case MonadKind::CvDist: return DistributionPolytope{{dirac(n, element)}};
  }
  throw std::logic_error("unreachable");
}

Row unit(MonadKind kind, const FinSet& x, std::string_view label) {
  return unit(kind, x, x.index_of(label));
}

KleisliArrow unit_arrow(MonadKind kind, const FinSet& x) {
  std::vector<Row> rows;
  rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back(unit(kind, x, i));
  return KleisliArrow(kind, x, x, std::move(rows));
}

KleisliArrow point_arrow(MonadKind kind, const FinSet& z, Row row) {
  return KleisliArrow(kind, FinSet("1", {"*"}), z, {std::move(row)});
}

namespace {

void combine_vertices(const RationalVector& mu, const std::vector<std::size_t>& support,
                      const KleisliArrow& g, std::size_t depth, RationalVector& acc,
                      std::vector<RationalVector>& out) {
  if (depth == support.size()) {
    out.push_back(acc);
    return;
  }
  const std::size_t y = support[depth];
  const auto& choices = std::get<DistributionPolytope>(g.row(y)).vertices;
  for (const auto& nu : choices) {
    RationalVector next = acc + mu[static_cast<Eigen::Index>(y)] * nu;
    combine_vertices(mu, support, g, depth + 1, next, out);
  }
}

}  // namespace

KleisliArrow kleisli_compose(const KleisliArrow& f, const KleisliArrow& g) {
  if (f.monad() != g.monad()) throw std::invalid_argument("kleisli_compose: monad mismatch");
  if (!(f.target() == g.source())) throw std::invalid_argument("kleisli_compose: carrier mismatch");
  const FinSet& z = g.target();
  const std::size_t nz = z.size();
  std::vector<Row> rows;
  rows.reserve(f.source().size());

  switch (f.monad()) {
    case MonadKind::SubDist:
    case MonadKind::Dist:
      return KleisliArrow(f.monad(), f.source(), z, RationalMatrix(f.matrix() * g.matrix()));

    case MonadKind::Powerset:
      for (const Row& r : f.rows()) {
        Mask acc = 0;
        for (std::size_t y : members(std::get<Subset>(r).elements)) acc |= std::get<Subset>(g.row(y)).elements;
        rows.push_back(Subset{acc});
      }
      break;

    case MonadKind::NonemptyPowersetLift:
      for (const Row& r : f.rows()) {
        const auto& s = std::get<LiftedSubset>(r);
        LiftedSubset acc{0, s.bottom};
        for (std::size_t y : members(s.elements)) {
          const auto& t = std::get<LiftedSubset>(g.row(y));
          acc.elements |= t.elements;
          acc.bottom = acc.bottom || t.bottom;
        }
        rows.push_back(acc);
      }
      break;

    case MonadKind::UpPowerset: {
      if (nz > 20) throw SizeGuardError("up-closed composition over a carrier larger than 20");
      // U belongs to (g . f)(x) iff {y : U in g(y)} belongs to f(x)
      const std::size_t subsets = std::size_t{1} << nz;
      std::vector<Mask> witnesses(subsets, 0);
      for (std::size_t y = 0; y < g.source().size(); ++y)
        for (Mask u : std::get<UpFamily>(g.row(y)).members) witnesses[u] |= bit(y);
      for (const Row& r : f.rows()) {
        const auto& fam = std::get<UpFamily>(r).members;
        UpFamily out;
        for (Mask u = 0; u < subsets; ++u)
          if (std::binary_search(fam.begin(), fam.end(), witnesses[u])) out.members.push_back(u);
        rows.push_back(std::move(out));
      }
      break;
    }

    case MonadKind::CvDist:
      for (const Row& r : f.rows()) {
        std::vector<RationalVector> out;
        for (const auto& mu : std::get<DistributionPolytope>(r).vertices) {
          std::vector<std::size_t> support;
          for (Eigen::Index y = 0; y < mu.size(); ++y)
            if (mu[y] != 0) support.push_back(static_cast<std::size_t>(y));
          RationalVector acc = RationalVector::Zero(static_cast<Eigen::Index>(nz));
          combine_vertices(mu, support, g, 0, acc, out);
        }
        rows.push_back(DistributionPolytope{hull_vertices(std::move(out))});
      }
      break;
  }
  return KleisliArrow(f.monad(), f.source(), z, std::move(rows));
}

Row map_row(MonadKind kind, const Row& row, const std::vector<std::size_t>& h, std::size_t target_size) {
  auto image = [&](Mask m) {
    Mask out = 0;
    for (std::size_t i : members(m)) out |= bit(h.at(i));
    return out;
  };
  auto push = [&](const RationalVector& w) {
    RationalVector out = RationalVector::Zero(static_cast<Eigen::Index>(target_size));
    for (Eigen::Index i = 0; i < w.size(); ++i)
      out[static_cast<Eigen::Index>(h.at(static_cast<std::size_t>(i)))] += w[i];
    return out;
  };
  switch (kind) {
    case MonadKind::Powerset: return Subset{image(std::get<Subset>(row).elements)};
    case MonadKind::NonemptyPowersetLift: {
      const auto& s = std::get<LiftedSubset>(row);
      return LiftedSubset{image(s.elements), s.bottom};
    }
    case MonadKind::SubDist:
    case MonadKind::Dist: return Weights{push(std::get<Weights>(row).mass)};
    case MonadKind::UpPowerset: {
      const auto& fam = std::get<UpFamily>(row).members;
      UpFamily out;
      for (Mask u = 0; u < (Mask{1} << target_size); ++u) {
        Mask pre = 0;
        for (std::size_t i = 0; i < h.size(); ++i)
          if (has(u, h[i])) pre |= bit(i);
        if (std::binary_search(fam.begin(), fam.end(), pre)) out.members.push_back(u);
      }
      return out;
    }
    case MonadKind::CvDist: {
      std::vector<RationalVector> vs;
      for (const auto& v : std::get<DistributionPolytope>(row).vertices) vs.push_back(push(v));
      return DistributionPolytope{hull_vertices(std::move(vs))};
    }
  }
  throw std::logic_error("unreachable");
}

Rational mass(const Row& row) {
  if (const auto* w = std::get_if<Weights>(&row)) return w->mass.sum();
  return 1;
}

// ---------------------------------------------------------------------------

namespace {

// Up-sets of the subset lattice of an n-element set as bitsets over 2^n.
std::vector<std::uint64_t> up_sets(std::size_t n) {
  if (n == 0) return {0, 1};
  auto smaller = up_sets(n - 1);
  const std::size_t half = std::size_t{1} << (n - 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t low : smaller)
    for (std::uint64_t high : smaller)
      if ((low & ~high) == 0) out.push_back(low | (high << half));
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

}  // namespace

std::vector<Row> enumerate_rows(MonadKind kind, std::size_t n, std::uint64_t bound) {
  std::vector<Row> out;
  switch (kind) {
    case MonadKind::Powerset: {
      if (n > 30 || (std::uint64_t{1} << n) > bound) throw SizeGuardError("too many subset rows");
      for (Mask m = 0; m < (Mask{1} << n); ++m) out.push_back(Subset{m});
      return out;
    }
    case MonadKind::NonemptyPowersetLift: {
      if (n > 30 || (std::uint64_t{1} << (n + 1)) > bound) throw SizeGuardError("too many lifted rows");
      const Mask full = carrier_mask(n);
      for (Mask m = 1; m < (Mask{1} << (n + 1)); ++m) out.push_back(LiftedSubset{m & full, has(m, n)});
      return out;
    }
    case MonadKind::UpPowerset: {
      // Dedekind numbers: 2, 3, 6, 20, 168, 7581, 7828354
      static constexpr std::uint64_t kDedekind[] = {2, 3, 6, 20, 168, 7581, 7828354};
      if (n > 6 || kDedekind[n] > bound) throw SizeGuardError("too many up-closed families");
      for (std::uint64_t bits : up_sets(n)) {
        UpFamily u;
        for (Mask s = 0; s < (Mask{1} << n); ++s)
          if (has(bits, s)) u.members.push_back(s);
        out.push_back(std::move(u));
      }
      return out;
    }
    default:
      throw std::invalid_argument(std::string(to_string(kind)) + " has infinitely many rows");
  }
}

void for_each_arrow(MonadKind kind, const FinSet& x, const FinSet& y,
                    const std::function<bool(const KleisliArrow&)>& visit, std::uint64_t bound) {
  const auto rows = enumerate_rows(kind, y.size(), bound);
  const std::uint64_t count = saturating_pow(rows.size(), x.size());
  if (count > bound) throw SizeGuardError("too many arrows to enumerate");
  std::vector<std::size_t> digits(x.size(), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<Row> chosen;
    chosen.reserve(x.size());
    for (std::size_t d : digits) chosen.push_back(rows[d]);
    if (!visit(KleisliArrow(kind, x, y, std::move(chosen)))) return;
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (++digits[k] < rows.size()) break;
      digits[k] = 0;
    }
  }
}

Row random_row(MonadKind kind, std::size_t n, Sampler& sampler, unsigned max_den) {
  const Mask full = carrier_mask(n);
  switch (kind) {
    case MonadKind::Powerset: return Subset{static_cast<Mask>(sampler.engine()()) & full};
    case MonadKind::NonemptyPowersetLift: {
      while (true) {
        Mask m = static_cast<Mask>(sampler.engine()()) & carrier_mask(n + 1);
        if (m != 0) return LiftedSubset{m & full, has(m, n)};
      }
    }
    case MonadKind::SubDist: return Weights{sampler.subdistribution(n, max_den, false)};
    case MonadKind::Dist: return Weights{sampler.subdistribution(n, max_den, true)};
    case MonadKind::UpPowerset: {
      std::vector<Mask> gens;
      const std::size_t k = sampler.index(3);
      for (std::size_t i = 0; i < k; ++i) gens.push_back(static_cast<Mask>(sampler.engine()()) & full);
      return up_closure(gens, n);
    }
    case MonadKind::CvDist: {
      std::vector<RationalVector> vs;
      const std::size_t k = 1 + sampler.index(3);
      for (std::size_t i = 0; i < k; ++i) vs.push_back(sampler.subdistribution(n, max_den, true));
      return DistributionPolytope{dedupe_vertices(std::move(vs))};
    }
  }
  throw std::logic_error("unreachable");
}

KleisliArrow random_arrow(MonadKind kind, const FinSet& x, const FinSet& y, Sampler& sampler, unsigned max_den) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back(random_row(kind, y.size(), sampler, max_den));
  return KleisliArrow(kind, x, y, std::move(rows));
}

// ---------------------------------------------------------------------------

namespace {

Witness arrow_witness(std::string law, std::vector<KleisliArrow> args, KleisliArrow lhs, KleisliArrow rhs,
                      std::function<bool()> recheck) {
  Witness w;
  w.law = std::move(law);
  const char* names[] = {"f", "g", "h"};
  for (std::size_t i = 0; i < args.size(); ++i)
    w.arguments.push_back(std::string(names[i]) + " = " + describe(args[i]));
  w.lhs = describe(lhs);
  w.rhs = describe(rhs);
  w.recheck = std::move(recheck);
  return w;
}

struct LawRun {
  const ComposeFn& compose;
  std::size_t checked = 0;
  std::optional<Witness> witness;

  // returns false once a violation has been recorded
  bool unit_laws(const KleisliArrow& f) {
    ++checked;
    const ComposeFn c = compose;
    const auto left = compose(unit_arrow(f.monad(), f.source()), f);
    if (!(left == f)) {
      witness = arrow_witness("left unit: f . eta = f", {f}, left, f, [c, f] {
        return !(c(unit_arrow(f.monad(), f.source()), f) == f);
      });
      return false;
    }
    const auto right = compose(f, unit_arrow(f.monad(), f.target()));
    if (!(right == f)) {
      witness = arrow_witness("right unit: eta . f = f", {f}, right, f, [c, f] {
        return !(c(f, unit_arrow(f.monad(), f.target())) == f);
      });
      return false;
    }
    return true;
  }

  bool associativity(const KleisliArrow& f, const KleisliArrow& g, const KleisliArrow& h) {
    ++checked;
    const auto lhs = compose(compose(f, g), h);
    const auto rhs = compose(f, compose(g, h));
    if (!(lhs == rhs)) {
      const ComposeFn c = compose;
      witness = arrow_witness("associativity: h . (g . f) = (h . g) . f", {f, g, h}, lhs, rhs,
                              [c, f, g, h] { return !(c(c(f, g), h) == c(f, c(g, h))); });
      return false;
    }
    return true;
  }
};

std::vector<KleisliArrow> arrows_between(MonadKind kind, const FinSet& x, const FinSet& y,
                                         const LawOptions& opt, Sampler& sampler) {
  std::vector<KleisliArrow> out;
  if (is_enumerable(kind)) {
    for_each_arrow(kind, x, y, [&](const KleisliArrow& f) {
      out.push_back(f);
      return true;
    }, opt.bound);
  } else {
    if (kind == MonadKind::Dist || kind == MonadKind::CvDist) {
      if (y.empty() && !x.empty()) return out;  // no arrows into an empty carrier
    }
    for (std::size_t i = 0; i < opt.samples; ++i) out.push_back(random_arrow(kind, x, y, sampler));
  }
  return out;
}

}  // namespace

Verdict check_monad_laws(MonadKind kind, const std::vector<FinSet>& carriers, const LawOptions& options,
                         const ComposeFn& compose) {
  Sampler sampler(options.seed);
  LawRun run{compose, 0, std::nullopt};
  auto fail = [&] { return Verdict::fail(*run.witness, run.checked); };

  for (const auto& x : carriers)
    for (const auto& y : carriers)
      for (const auto& f : arrows_between(kind, x, y, options, sampler))
        if (!run.unit_laws(f)) return fail();

  for (const auto& x : carriers)
    for (const auto& y : carriers)
      for (const auto& z : carriers)
        for (const auto& w : carriers) {
          const auto fs = arrows_between(kind, x, y, options, sampler);
          const auto gs = arrows_between(kind, y, z, options, sampler);
          const auto hs = arrows_between(kind, z, w, options, sampler);
          if (is_enumerable(kind)) {
            if (static_cast<double>(fs.size()) * static_cast<double>(gs.size()) * static_cast<double>(hs.size()) >
                static_cast<double>(options.bound)) {
              throw SizeGuardError("associativity sweep exceeds the law-check bound");
            }
            for (const auto& f : fs)
              for (const auto& g : gs)
                for (const auto& h : hs)
                  if (!run.associativity(f, g, h)) return fail();
          } else {
            const std::size_t n = std::min({fs.size(), gs.size(), hs.size()});
            for (std::size_t i = 0; i < n; ++i)
              if (!run.associativity(fs[i], gs[i], hs[i])) return fail();
          }
        }
  return Verdict::pass(run.checked);
}

}  // namespace wpb
