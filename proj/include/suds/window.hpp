#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "suds/error.hpp"
#include "suds/sample.hpp"

namespace suds {

/// Bounded FIFO of samples in arrival order.
class SlidingWindow {
 public:
  explicit SlidingWindow(std::size_t capacity) : capacity_(capacity) {
    detail::require(capacity > 0, "SlidingWindow: capacity must be positive");
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  bool full() const { return items_.size() == capacity_; }
  bool empty() const { return items_.empty(); }

  // Appends; evicts the oldest item when already full.
  void push(Sample s) {
    if (full()) items_.pop_front();
    items_.push_back(std::move(s));
  }

  void drop_oldest(std::size_t n) {
    detail::require(n <= items_.size(), "SlidingWindow: drop past the front");
    items_.erase(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(n));
  }

  void clear() { items_.clear(); }

  const Sample& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  // Copies of the first / last n items; n is clamped to the occupancy.
  std::vector<Sample> head(std::size_t n) const {
    n = std::min(n, items_.size());
    return {items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(n)};
  }
  std::vector<Sample> tail(std::size_t n) const {
    n = std::min(n, items_.size());
    return {items_.end() - static_cast<std::ptrdiff_t>(n), items_.end()};
  }
  std::vector<Sample> snapshot() const { return {items_.begin(), items_.end()}; }

 private:
  std::size_t capacity_;
  std::deque<Sample> items_;
};

}  // namespace suds
