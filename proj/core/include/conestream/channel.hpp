#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace conestream {

/// Single-producer single-consumer queue with a fixed capacity. `push`
/// blocks while the queue is full, `pop` blocks while it is empty. The
/// producer ends the stream with `close()` or `fail()`; a consumer that gives
/// up calls `cancel()` so a blocked producer is released.
template <typename T>
class BoundedChannel {
 public:
  explicit BoundedChannel(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

  BoundedChannel(const BoundedChannel&) = delete;
  BoundedChannel& operator=(const BoundedChannel&) = delete;

  /// Returns false if the consumer cancelled; the value is dropped.
  bool push(T value) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return queue_.size() < capacity_ || cancelled_; });
    if (cancelled_) return false;
    queue_.push_back(std::move(value));
    if (queue_.size() > high_water_) high_water_ = queue_.size();
    not_empty_.notify_one();
    return true;
  }

  /// nullopt once the producer closed and the queue drained. Rethrows the
  /// producer's exception if it called fail().
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !queue_.empty() || closed_; });
    if (!queue_.empty()) {
      T value = std::move(queue_.front());
      queue_.pop_front();
      not_full_.notify_one();
      return value;
    }
    if (error_) std::rethrow_exception(error_);
    return std::nullopt;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

  void fail(std::exception_ptr e) {
    std::lock_guard lock(mu_);
    error_ = std::move(e);
    closed_ = true;
    not_empty_.notify_all();
  }

  void cancel() {
    std::lock_guard lock(mu_);
    cancelled_ = true;
    not_full_.notify_all();
  }

  std::size_t capacity() const noexcept { return capacity_; }

  std::size_t high_water() const {
    std::lock_guard lock(mu_);
    return high_water_;
  }

 private:
  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<T> queue_;
  std::size_t high_water_ = 0;
  bool closed_ = false;
  bool cancelled_ = false;
  std::exception_ptr error_;
};

}  // namespace conestream
