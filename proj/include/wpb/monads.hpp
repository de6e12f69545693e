// Concrete finite monads, their Kleisli categories, and law checkers.

#ifndef WPB_MONADS_HPP
#define WPB_MONADS_HPP

#include "wpb/finite.hpp"
#include "wpb/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wpb {

enum class MonadKind {
  Powerset,              // P
  NonemptyPowersetLift,  // P+ * L : nonempty subsets of Y + {bottom}
  SubDist,               // D<=1
  Dist,                  // D=1
  UpPowerset,            // Up * P : up-closed families of subsets
  CvDist,                // Cv * D=1 : nonempty polytopes of distributions
};

inline constexpr MonadKind kAllMonads[] = {MonadKind::Powerset, MonadKind::NonemptyPowersetLift,
                                           MonadKind::SubDist,  MonadKind::Dist,
                                           MonadKind::UpPowerset, MonadKind::CvDist};

std::string_view to_string(MonadKind k);
MonadKind parse_monad(std::string_view name);

/// True for the monads whose T-values over a finite set are finitely many.
bool is_enumerable(MonadKind k);

// ---------------------------------------------------------------------------
// T-values over a finite carrier

struct Subset {
  Mask elements = 0;
};

struct LiftedSubset {
  Mask elements = 0;
  bool bottom = false;
};

/// Finite-support weights; a subdistribution or a distribution depending on
/// the monad.
struct Weights {
  RationalVector mass;
};

/// Up-closed family of subsets, members sorted ascending.
struct UpFamily {
  std::vector<Mask> members;
};

/// V-representation of a nonempty convex set of distributions. Rows given by
/// the user keep their points (duplicates removed); composites and images
/// over at most three elements keep extreme points only. Equality compares
/// hulls.
struct DistributionPolytope {
  std::vector<RationalVector> vertices;
};

using Row = std::variant<Subset, LiftedSubset, Weights, UpFamily, DistributionPolytope>;

bool rows_equal(const Row& a, const Row& b);
std::string describe_row(const Row& row, const FinSet& target);

UpFamily up_closure(const std::vector<Mask>& family, std::size_t n);
bool is_up_closed(const std::vector<Mask>& family, std::size_t n);

/// Removes duplicate vertices, keeping first occurrences.
std::vector<RationalVector> dedupe_vertices(std::vector<RationalVector> vertices);

/// Checks a row against the invariants of `kind` over a carrier of size n;
/// throws InputError with a specific code when one is violated.
void validate_row(MonadKind kind, const Row& row, std::size_t n);

// ---------------------------------------------------------------------------

/// A computation X -> T Y, one row per source element.
class KleisliArrow {
 public:
  KleisliArrow(MonadKind monad, FinSet source, FinSet target, std::vector<Row> rows);
  /// SubDist/Dist arrow from a |X| x |Y| row-substochastic matrix.
  KleisliArrow(MonadKind monad, FinSet source, FinSet target, const RationalMatrix& m);

  MonadKind monad() const noexcept { return monad_; }
  const FinSet& source() const noexcept { return source_; }
  const FinSet& target() const noexcept { return target_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(std::size_t x) const { return rows_.at(x); }

  /// Row-stochastic matrix view (SubDist/Dist only).
  RationalMatrix matrix() const;

  friend bool operator==(const KleisliArrow& a, const KleisliArrow& b);

 private:
  MonadKind monad_;
  FinSet source_;
  FinSet target_;
  std::vector<Row> rows_;
};

std::string describe(const KleisliArrow& f);

Row unit(MonadKind kind, const FinSet& x, std::size_t element);
Row unit(MonadKind kind, const FinSet& x, std::string_view label);
KleisliArrow unit_arrow(MonadKind kind, const FinSet& x);

/// Kleisli composite g . f : X -> T Z. Throws std::invalid_argument on a
/// monad or carrier mismatch.
KleisliArrow kleisli_compose(const KleisliArrow& f, const KleisliArrow& g);

using ComposeFn = std::function<KleisliArrow(const KleisliArrow&, const KleisliArrow&)>;

/// Functor action T h on a row, for h : {0..|h|-1} -> {0..target_size-1}.
Row map_row(MonadKind kind, const Row& row, const std::vector<std::size_t>& h,
            std::size_t target_size);

/// Mass of a weights row; 1 for non-probabilistic rows.
Rational mass(const Row& row);

/// All T-values over an n-element carrier (enumerable monads only), in a
/// deterministic order; throws SizeGuardError beyond `bound`.
std::vector<Row> enumerate_rows(MonadKind kind, std::size_t n,
                                std::uint64_t bound = kDefaultEnumerationBound);

/// Visits every arrow X -> T Y of an enumerable monad.
void for_each_arrow(MonadKind kind, const FinSet& x, const FinSet& y,
                    const std::function<bool(const KleisliArrow&)>& visit,
                    std::uint64_t bound = kDefaultEnumerationBound);

Row random_row(MonadKind kind, std::size_t n, Sampler& sampler, unsigned max_den = 16);
KleisliArrow random_arrow(MonadKind kind, const FinSet& x, const FinSet& y, Sampler& sampler,
                          unsigned max_den = 16);

/// Arrow 1 -> T Z with the given single row; used to express mu as a
/// Kleisli composite.
KleisliArrow point_arrow(MonadKind kind, const FinSet& z, Row row);

// ---------------------------------------------------------------------------
// Law checking

struct LawOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 100;   // per carrier combination, sampled monads
  std::uint64_t bound = 50'000'000;  // max compositions for exhaustive checks
};

/// Left/right unit and associativity of `compose`, exhaustively over every
/// carrier combination for enumerable monads, sampled otherwise.
Verdict check_monad_laws(MonadKind kind, const std::vector<FinSet>& carriers,
                         const LawOptions& options = {}, const ComposeFn& compose = kleisli_compose);

}  // namespace wpb

#endif  // WPB_MONADS_HPP
