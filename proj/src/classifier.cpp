#include "wearcomm/classifier.hpp"

#include <algorithm>
#include <limits>

namespace wearcomm::classifier {

std::string_view to_string(Action action) {
  switch (action) {
    case Action::On: return "ON";
    case Action::Off: return "OFF";
    case Action::DoNothing: return "DO_NOTHING";
  }
  return "?";
}

std::string to_string(const Band& band) {
  return "[" + std::to_string(band.lo) + "," + std::to_string(band.hi) + "]";
}

void validate(const CalibrationProfile& profile) {
  if (profile.on_band.lo > profile.on_band.hi) throw ConfigError("on_band has lo > hi");
  if (profile.off_band.lo > profile.off_band.hi) throw ConfigError("off_band has lo > hi");
  if (profile.on_band.overlaps(profile.off_band)) {
    throw ConfigError("on_band " + to_string(profile.on_band) + " overlaps off_band " +
                      to_string(profile.off_band));
  }
  if (profile.window_size < 1) throw ConfigError("window_size must be at least 1");
  if (profile.debounce_n < 1) throw ConfigError("debounce_n must be at least 1");
}

Mean window_mean(std::span<const AccelSample> samples, Axis axis) {
  if (samples.empty()) throw ConfigError("window_mean of an empty window");
  Mean mean{0, static_cast<std::int64_t>(samples.size())};
  for (const auto& s : samples) {
    mean.sum += axis == Axis::X ? s.x : axis == Axis::Y ? s.y : s.z;
  }
  return mean;
}

Action classify_window(std::span<const AccelSample> samples, const CalibrationProfile& profile) {
  if (samples.size() != profile.window_size) {
    throw ConfigError("window has " + std::to_string(samples.size()) + " samples, profile expects " +
                      std::to_string(profile.window_size));
  }
  if (window_mean(samples, Axis::Z).within(profile.on_band)) return Action::On;
  if (window_mean(samples, Axis::Y).within(profile.off_band)) return Action::Off;
  return Action::DoNothing;
}

namespace {

Band axis_extent(std::span<const sensor::Trace> traces, sensor::GestureKind expected, Axis axis) {
  if (traces.empty()) throw ConfigError("calibrate needs at least one trace per gesture");
  Band extent{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& trace : traces) {
    if (trace.label != expected) {
      throw ConfigError("calibration trace is not labeled " + std::string(sensor::to_string(expected)));
    }
    if (trace.samples.empty()) throw ConfigError("calibration trace is empty");
    for (const auto& s : trace.samples) {
      const std::int64_t v = axis == Axis::Y ? s.y : s.z;
      extent.lo = std::min(extent.lo, v);
      extent.hi = std::max(extent.hi, v);
    }
  }
  return extent;
}

}  // namespace

CalibrationProfile calibrate(std::span<const sensor::Trace> on_traces,
                             std::span<const sensor::Trace> off_traces, std::int64_t margin_lo,
                             std::int64_t margin_hi) {
  auto on = axis_extent(on_traces, sensor::GestureKind::VerticalUpDown, Axis::Z);
  auto off = axis_extent(off_traces, sensor::GestureKind::Horizontal, Axis::Y);
  on = {on.lo - margin_lo, on.hi + margin_hi};
  off = {off.lo - margin_lo, off.hi + margin_hi};
  if (on.lo > on.hi || off.lo > off.hi) {
    throw CalibrationError("margins produce an empty band: on " + to_string(on) + ", off " +
                               to_string(off),
                           on, off);
  }
  if (on.overlaps(off)) {
    throw CalibrationError("bands overlap: on " + to_string(on) + ", off " + to_string(off), on, off);
  }
  CalibrationProfile profile;
  profile.on_band = on;
  profile.off_band = off;
  return profile;
}

Debouncer::Debouncer(std::size_t debounce_n) : n_(debounce_n) {
  if (n_ < 1) throw ConfigError("debounce_n must be at least 1");
}

std::optional<Action> Debouncer::feed(Action verdict) {
  if (verdict == Action::DoNothing) {
    run_action_ = Action::DoNothing;
    run_length_ = 0;
    return std::nullopt;
  }
  if (verdict == run_action_) {
    ++run_length_;
  } else {
    run_action_ = verdict;
    run_length_ = 1;
  }
  if (run_length_ >= n_ && last_emitted_ != verdict) {
    last_emitted_ = verdict;
    return verdict;
  }
  return std::nullopt;
}

std::vector<Action> debounced_stream(std::span<const Action> verdicts, std::size_t debounce_n) {
  Debouncer debouncer(debounce_n);
  std::vector<Action> emitted;
  for (auto v : verdicts) {
    if (auto a = debouncer.feed(v)) emitted.push_back(*a);
  }
  return emitted;
}

}  // namespace wearcomm::classifier
