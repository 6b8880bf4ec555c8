#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oms/image.h"

namespace oms {

/// Timestamp in microseconds.
using Micros = std::int64_t;

/// One DVS brightness-change record.
struct Event
{
  Micros t = 0;
  int x = 0;
  int y = 0;
  int p = 1;  // -1 or +1

  friend bool operator==(const Event &, const Event &) = default;
};

/// Events with t_start < t <= t_end, non-decreasing in t.
struct EventWindow
{
  std::vector<Event> events;
  Micros t_start = -1;
  Micros t_end = 0;
};

/// Throws ValidationError naming the first index where t decreases.
void check_sorted(std::span<const Event> stream);

/// Partitions `stream` into one window per mask timestamp k holding the
/// events in (t_{k-1}, t_k], with t_0 = -1. Events after the last timestamp
/// are dropped.
std::vector<EventWindow> window_events(
  std::span<const Event> stream, std::span<const Micros> mask_timestamps);

/// Collapses time and polarity: a pixel is 1 iff any event hit it.
BinaryFrame accumulate_frame(const EventWindow & window, const SensorGeometry & geometry);
BinaryFrame accumulate_frame(std::span<const Event> events, const SensorGeometry & geometry);

/// window_events followed by accumulate_frame on every window.
std::vector<BinaryFrame> accumulate_frames(
  std::span<const Event> stream, std::span<const Micros> mask_timestamps,
  const SensorGeometry & geometry);

}  // namespace oms
