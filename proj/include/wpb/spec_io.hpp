// JSON spec documents: sets, an optional computation, a modality, an
// optional stored transformer and probe-grid overrides.

#ifndef WPB_SPEC_IO_HPP
#define WPB_SPEC_IO_HPP

#include "wpb/healthiness.hpp"
#include "wpb/modalities.hpp"
#include "wpb/monads.hpp"
#include "wpb/transformer.hpp"

#include <map>
#include <optional>
#include <string>

namespace wpb {

/// Label used for the divergence element of NonemptyPowersetLift rows.
inline constexpr std::string_view kBottomLabel = "⊥";

struct SpecDocument {
  std::map<std::string, FinSet> sets;
  std::optional<KleisliArrow> computation;
  std::optional<std::string> modality;  // e.g. "diamond", "tau_r:1/3"
  std::optional<PredicateTransformer> transformer;
  std::optional<ProbeGrid> probes;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates a document. Errors are InputError with a stable code
/// and a message locating the offending position or JSON path.
SpecDocument parse_spec(std::string_view text);
SpecDocument load_spec(const std::string& path);

/// Serializations (pretty-printed JSON, keys in a fixed order).
std::string emit_computation(const KleisliArrow& f, const std::optional<std::string>& modality);
std::string emit_truth_table(const BoolTransformer& phi, const std::optional<KleisliArrow>& defining,
                             const std::optional<std::string>& modality);
std::string emit_probe_table(const RationalTransformer& phi, const ProbeGrid& grid,
                             const std::optional<KleisliArrow>& defining, const std::optional<std::string>& modality);

}  // namespace wpb

#endif  // WPB_SPEC_IO_HPP
