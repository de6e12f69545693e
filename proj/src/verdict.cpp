#include "wpb/verdict.hpp"

namespace wpb {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Healthy: return "healthy";
    case Status::Unhealthy: return "unhealthy";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string Witness::describe() const {
  std::string s = "law: " + law + "\n";
  for (const auto& a : arguments) s += "  " + a + "\n";
  s += "  lhs = " + lhs + "\n  rhs = " + rhs + "\n";
  return s;
}

std::string Verdict::describe() const {
  std::string s = std::string(to_string(status)) + " (" + std::to_string(checked) + " instances checked)";
  if (!note.empty()) s += "\nnote: " + note;
  if (witness) s += "\nwitness " + witness->describe();
  return s;
}

Verdict combine(const std::vector<Verdict>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.checked;
  for (const auto& p : parts) {
    if (p.unhealthy()) {
      Verdict v = p;
      v.checked = total;
      return v;
    }
  }
  for (const auto& p : parts) {
    if (p.status == Status::Inconclusive) {
      Verdict v = p;
      v.checked = total;
      return v;
    }
  }
  return Verdict::pass(total);
}

bool witness_reproduces(const Verdict& v) {
  if (!v.unhealthy()) return true;
  return v.witness && v.witness->recheck && v.witness->recheck();
}

}  // namespace wpb
