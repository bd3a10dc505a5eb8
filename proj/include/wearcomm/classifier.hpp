#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wearcomm/sensor.hpp"

namespace wearcomm::classifier {

using sensor::AccelSample;

// Declaration order is the evaluation order: On is tested before Off.
enum class Action { On, Off, DoNothing };

std::string_view to_string(Action action);  // "ON", "OFF", "DO_NOTHING"

enum class Axis { X, Y, Z };

// Inclusive integer interval.
struct Band {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool overlaps(const Band& other) const { return lo <= other.hi && other.lo <= hi; }
  friend bool operator==(const Band&, const Band&) = default;
};

std::string to_string(const Band& band);  // "[lo,hi]"

// Exact mean kept as sum / count.
struct Mean {
  std::int64_t sum = 0;
  std::int64_t count = 1;

  bool within(const Band& band) const {
    return band.lo * count <= sum && sum <= band.hi * count;
  }
  double approx() const { return static_cast<double>(sum) / static_cast<double>(count); }
  friend bool operator==(const Mean& a, const Mean& b) { return a.sum * b.count == b.sum * a.count; }
};

inline constexpr Band kDefaultOnBand{240, 286};
inline constexpr Band kDefaultOffBand{323, 384};
inline constexpr std::size_t kDefaultWindowSize = 16;
inline constexpr std::size_t kDefaultDebounce = 2;

// On is decided by the Z-axis window mean, Off by the Y-axis window mean.
struct CalibrationProfile {
  Band on_band = kDefaultOnBand;
  Band off_band = kDefaultOffBand;
  std::size_t window_size = kDefaultWindowSize;
  std::size_t debounce_n = kDefaultDebounce;

  friend bool operator==(const CalibrationProfile&, const CalibrationProfile&) = default;
};

// Throws ConfigError unless both bands are well formed and disjoint and the
// window and debounce lengths are at least 1.
void validate(const CalibrationProfile& profile);

// Throws ConfigError on an empty window.
Mean window_mean(std::span<const AccelSample> samples, Axis axis);

// Throws ConfigError unless samples.size() == profile.window_size.
Action classify_window(std::span<const AccelSample> samples, const CalibrationProfile& profile);

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, Band on, Band off)
      : Error(what), on_band_(on), off_band_(off) {}
  Band on_band() const { return on_band_; }
  Band off_band() const { return off_band_; }

 private:
  Band on_band_;
  Band off_band_;
};

// on_band spans the Z values of the VerticalUpDown traces and off_band the Y
// values of the Horizontal traces, widened by the margins. Window and
// debounce keep their defaults. Throws ConfigError on empty or mislabeled
// input, CalibrationError when the widened bands overlap.
CalibrationProfile calibrate(std::span<const sensor::Trace> on_traces,
                             std::span<const sensor::Trace> off_traces, std::int64_t margin_lo,
                             std::int64_t margin_hi);

// Run-length debouncer: emits an action once it has been seen debounce_n
// times in a row and differs from the last emitted action. DoNothing
// breaks runs and is never emitted.
class Debouncer {
 public:
  explicit Debouncer(std::size_t debounce_n);

  std::optional<Action> feed(Action verdict);
  std::optional<Action> last_emitted() const { return last_emitted_; }

 private:
  std::size_t n_;
  Action run_action_ = Action::DoNothing;
  std::size_t run_length_ = 0;
  std::optional<Action> last_emitted_;
};

std::vector<Action> debounced_stream(std::span<const Action> verdicts, std::size_t debounce_n);

// JSON document {"on_band":[lo,hi],"off_band":[lo,hi],"window_size":n,"debounce_n":n}.
// Integers only; unknown or missing keys are rejected with ConfigError.
CalibrationProfile parse_profile(std::string_view json_text);
std::string format_profile(const CalibrationProfile& profile);
CalibrationProfile load_profile(const std::filesystem::path& path);
void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path);

}  // namespace wearcomm::classifier
