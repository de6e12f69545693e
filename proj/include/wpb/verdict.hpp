// Verdicts returned by every law and healthiness checker.

#ifndef WPB_VERDICT_HPP
#define WPB_VERDICT_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpb {

enum class Status { Healthy, Unhealthy, Inconclusive };

std::string_view to_string(Status s);

/// A concrete law instance that failed. `recheck` recomputes both sides
/// from the stored arguments and returns true iff the violation is strict.
struct Witness {
  std::string law;
  std::vector<std::string> arguments;
  std::string lhs;
  std::string rhs;
  std::function<bool()> recheck;

  std::string describe() const;
};

struct Verdict {
  Status status = Status::Healthy;
  std::optional<Witness> witness;
  std::size_t checked = 0;
  std::string note;

  bool healthy() const noexcept { return status == Status::Healthy; }
  bool unhealthy() const noexcept { return status == Status::Unhealthy; }

  static Verdict pass(std::size_t checked, std::string note = {}) {
    return Verdict{Status::Healthy, std::nullopt, checked, std::move(note)};
  }
  static Verdict fail(Witness w, std::size_t checked) {
    return Verdict{Status::Unhealthy, std::move(w), checked, {}};
  }
  static Verdict inconclusive(std::size_t checked, std::string note) {
    return Verdict{Status::Inconclusive, std::nullopt, checked, std::move(note)};
  }

  std::string describe() const;
};

/// Combines verdicts of independent sub-checks: the first unhealthy one wins,
/// then the first inconclusive one; counts are summed.
Verdict combine(const std::vector<Verdict>& parts);

/// Re-evaluates the witness of an unhealthy verdict; healthy and
/// inconclusive verdicts trivially pass.
bool witness_reproduces(const Verdict& v);

}  // namespace wpb

#endif  // WPB_VERDICT_HPP
