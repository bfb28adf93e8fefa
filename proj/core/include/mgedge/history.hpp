#pragma once

#include <cstdint>
#include <stdexcept>

#include "mgedge/action.hpp"

namespace mgedge {

// Shared record of past winning actions, broadcast to all agents. Bounded by
// the largest memory size any agent uses; older entries fall off.
//
// encode(s) packs the s most recent winners into an integer index: the most
// recent winner is bit 0, the s-th most recent is bit s-1. Strategy tables
// are addressed with this index.
class WinHistory {
 public:
  explicit WinHistory(int capacity) : capacity_(capacity) {
    if (capacity < 0 || capacity > 63) {
      throw std::invalid_argument("history capacity out of [0, 63]");
    }
  }

  int capacity() const { return capacity_; }
  int size() const { return size_; }

  void push(Action winner) {
    if (capacity_ == 0) return;
    bits_ = ((bits_ << 1) | static_cast<std::uint64_t>(as_int(winner))) & mask(capacity_);
    if (size_ < capacity_) ++size_;
  }

  std::uint32_t encode(int s) const {
    if (s < 0 || s > size_) {
      throw std::invalid_argument("history shorter than requested memory size");
    }
    return static_cast<std::uint32_t>(bits_ & mask(s));
  }

  // k-th most recent winner, k = 0 is the latest.
  Action recent(int k = 0) const {
    if (k < 0 || k >= size_) {
      throw std::invalid_argument("history index out of range");
    }
    return ((bits_ >> k) & 1u) != 0 ? Action::Active : Action::Inactive;
  }

 private:
  static constexpr std::uint64_t mask(int bits) {
    return bits == 0 ? 0ull : (~0ull >> (64 - bits));
  }

  std::uint64_t bits_ = 0;
  int size_ = 0;
  int capacity_;
};

}  // namespace mgedge
