// Reconstruction of computations from healthy transformers.

#ifndef WPB_SYNTHESIS_HPP
#define WPB_SYNTHESIS_HPP

#include "wpb/healthiness.hpp"
#include "wpb/monads.hpp"
#include "wpb/polytope.hpp"
#include "wpb/semantics.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpb {

struct SynthesisResult {
  std::optional<KleisliArrow> arrow;
  /// Re-check of pt(arrow) against the input transformer, or the reason no
  /// arrow could be certified.
  Verdict residual;
  std::vector<std::string> normalization;
  /// Polytope synthesis only: the defining half-spaces of each row.
  std::vector<std::vector<polytope::HalfSpace<Rational>>> halfspaces;
};

/// Thrown when the transformer fails the healthiness precondition of the
/// requested synthesis; carries the failing verdict.
class SynthesisError : public std::runtime_error {
 public:
  explicit SynthesisError(Verdict v)
      : std::runtime_error("precondition failed: " + v.describe()), verdict_(std::move(v)) {}
  const Verdict& verdict() const noexcept { return verdict_; }

 private:
  Verdict verdict_;
};

enum class RelationModality { Diamond, Box };

SynthesisResult synth_relation(const BoolTransformer& phi, RelationModality modality);
SynthesisResult synth_subdist(const RationalTransformer& phi, GemodVariant variant, const ProbeGrid& grid);
SynthesisResult synth_dist(const RationalTransformer& phi, const ProbeGrid& grid);
SynthesisResult synth_upfamily(const BoolTransformer& phi);
SynthesisResult synth_dijkstra(const BoolTransformer& phi);
SynthesisResult synth_polytope(const RationalTransformer& phi, const ProbeGrid& grid);

// Table-level kernels used by the exhaustive sweeps; no precondition checks.
// Row x of the result is a mask over Y.
std::vector<Mask> relation_rows_diamond(const std::vector<Mask>& table, std::size_t nx, std::size_t ny);
std::vector<Mask> relation_rows_box(const std::vector<Mask>& table, std::size_t nx, std::size_t ny);
/// wp tables straight from relation rows.
void wp_diamond_table(const std::vector<Mask>& rows, std::size_t ny, std::vector<Mask>& out);
void wp_box_table(const std::vector<Mask>& rows, std::size_t ny, std::vector<Mask>& out);

inline constexpr std::string_view kInstanceNames[] = {"may",  "must", "game", "dijkstra", "subdist_total",
                                                      "subdist_partial", "dist_convex", "cv_sublinear"};

/// The monad, modality and structure class of a theorem instance.
struct InstanceInfo {
  std::string id;
  MonadKind monad;
  std::string modality;
  StructureClass cls;
};
InstanceInfo instance_info(std::string_view id);

/// Collapses rows containing bottom to {bottom}; identity for other monads.
KleisliArrow normalize(const KleisliArrow& f);

/// Runs the transformer semantics of `instance` on f, synthesizes back, and
/// checks synth(pt(f)) = normalize(f) and pt(synth(pt(f))) = pt(f). CvDist
/// arrows are compared semantically on `grid` (default grid when null).
Verdict roundtrip_verify(const KleisliArrow& f, std::string_view instance, const ProbeGrid* grid = nullptr);

/// Dispatches to the synthesis matching an instance.
SynthesisResult synthesize(const PredicateTransformer& phi, std::string_view instance, const ProbeGrid* grid);

}  // namespace wpb

#endif  // WPB_SYNTHESIS_HPP
