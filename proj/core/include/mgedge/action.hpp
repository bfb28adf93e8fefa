#pragma once

#include <cstdint>

#include "mgedge/rng.hpp"

namespace mgedge {

// A server either accepts offloaded jobs this round (Active) or sits it out.
enum class Action : std::uint8_t { Inactive = 0, Active = 1 };

constexpr int as_int(Action a) { return static_cast<int>(a); }

constexpr Action other(Action a) {
  return a == Action::Active ? Action::Inactive : Action::Active;
}

constexpr const char* to_string(Action a) {
  return a == Action::Active ? "active" : "inactive";
}

inline Action random_action(SplitMix64& rng) {
  return (rng.next() & 1u) != 0 ? Action::Active : Action::Inactive;
}

}  // namespace mgedge
