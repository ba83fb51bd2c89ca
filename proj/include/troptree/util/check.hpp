#pragma once

#include <optional>
#include <utility>

namespace troptree {

// Outcome of a condition scan: passes, or carries the first counterexample.
template <class Witness>
struct Check {
  std::optional<Witness> witness;

  static Check pass() { return {}; }
  static Check fail(Witness w) { return Check{std::move(w)}; }

  [[nodiscard]] bool passed() const { return !witness.has_value(); }
  explicit operator bool() const { return passed(); }
};

}  // namespace troptree
