#include "oms/event.h"

#include <algorithm>
#include <string>

namespace oms {

void validate(const SensorGeometry & geometry)
{
  if (geometry.width < 1 || geometry.height < 1) {
    throw ValidationError(
      "sensor geometry must be at least 1x1, got " + std::to_string(geometry.width) + "x" +
      std::to_string(geometry.height));
  }
}

void check_sorted(std::span<const Event> stream)
{
  for (std::size_t i = 1; i < stream.size(); ++i) {
    if (stream[i].t < stream[i - 1].t) {
      throw ValidationError("event stream not sorted by timestamp at index " + std::to_string(i));
    }
  }
}

std::vector<EventWindow> window_events(
  std::span<const Event> stream, std::span<const Micros> mask_timestamps)
{
  check_sorted(stream);
  for (std::size_t k = 1; k < mask_timestamps.size(); ++k) {
    if (mask_timestamps[k] <= mask_timestamps[k - 1]) {
      throw ValidationError(
        "mask timestamps not strictly increasing at index " + std::to_string(k));
    }
  }

  std::vector<EventWindow> windows;
  windows.reserve(mask_timestamps.size());
  auto cursor = stream.begin();
  Micros previous = -1;
  for (Micros t_end : mask_timestamps) {
    EventWindow window;
    window.t_start = previous;
    window.t_end = t_end;
    // skip anything at or before the previous boundary (only possible for
    // negative timestamps before the first window)
    cursor = std::find_if(cursor, stream.end(), [&](const Event & e) { return e.t > previous; });
    auto last = std::find_if(cursor, stream.end(), [&](const Event & e) { return e.t > t_end; });
    window.events.assign(cursor, last);
    cursor = last;
    previous = t_end;
    windows.push_back(std::move(window));
  }
  return windows;
}

BinaryFrame accumulate_frame(std::span<const Event> events, const SensorGeometry & geometry)
{
  BinaryFrame frame(geometry);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event & e = events[i];
    if (!geometry.contains(e.x, e.y)) {
      throw ValidationError(
        "event " + std::to_string(i) + " at (" + std::to_string(e.x) + "," +
        std::to_string(e.y) + ") outside " + std::to_string(geometry.width) + "x" +
        std::to_string(geometry.height) + " sensor");
    }
    frame.set(e.y, e.x, true);
  }
  return frame;
}

BinaryFrame accumulate_frame(const EventWindow & window, const SensorGeometry & geometry)
{
  return accumulate_frame(std::span<const Event>(window.events), geometry);
}

std::vector<BinaryFrame> accumulate_frames(
  std::span<const Event> stream, std::span<const Micros> mask_timestamps,
  const SensorGeometry & geometry)
{
  std::vector<BinaryFrame> frames;
  for (const auto & window : window_events(stream, mask_timestamps)) {
    frames.push_back(accumulate_frame(window, geometry));
  }
  return frames;
}

}  // namespace oms
