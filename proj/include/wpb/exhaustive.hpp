// Theorem-level sweeps: healthy transformers versus transformers of
// computations, exhaustively (Boolean) or on seeded samples (rational).

#ifndef WPB_EXHAUSTIVE_HPP
#define WPB_EXHAUSTIVE_HPP

#include "wpb/synthesis.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace wpb {

struct TheoremInstance {
  std::string id;
  std::size_t nx = 2;
  std::size_t ny = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 200;  // rational instances
  std::uint64_t bound = kDefaultEnumerationBound;
  unsigned jobs = 1;
};

struct SweepReport {
  std::string id;
  std::size_t nx = 0, ny = 0;
  bool exhaustive = false;
  std::uint64_t transformers = 0;   // |2^Y -> 2^X| (Boolean only)
  std::uint64_t healthy = 0;        // |S1|
  std::uint64_t computations = 0;   // arrows enumerated or sampled
  std::uint64_t realizable = 0;     // |S2| (distinct transformers)
  bool materialized = false;        // S1 and S2 compared as sets
  bool holds = false;
  std::optional<Verdict> discrepancy;
  double seconds = 0;               // wall time, kept out of text()

  /// Deterministic text report (no timing).
  std::string text() const;
};

/// Boolean instances (may, must, game, dijkstra) run exhaustively and need
/// the transformer stream within `bound`; rational instances are sampled.
SweepReport enum_verify(const TheoremInstance& instance);

}  // namespace wpb

#endif  // WPB_EXHAUSTIVE_HPP
