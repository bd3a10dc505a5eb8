#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wearcomm/error.hpp"

namespace wearcomm {

// Virtual or trace time in milliseconds.
using Millis = std::int64_t;

}  // namespace wearcomm

namespace wearcomm::sensor {

// Raw counts are 10-bit.
inline constexpr int kMaxCount = 1023;
inline constexpr Millis kDefaultSamplePeriodMs = 20;

struct AccelSample {
  Millis t = 0;
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const AccelSample&, const AccelSample&) = default;
};

enum class GestureKind { VerticalUpDown, Horizontal, Other };

std::string_view to_string(GestureKind kind);
std::optional<GestureKind> parse_gesture_kind(std::string_view text);

struct Trace {
  std::vector<AccelSample> samples;
  std::optional<GestureKind> label;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Thrown on malformed trace content. line() is 1-based over data rows
// (header and metadata lines are not counted), 0 when not line-specific.
class TraceError : public Error {
 public:
  TraceError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Checks count range and strictly increasing timestamps; throws TraceError.
void validate(const Trace& trace);

Trace parse_trace(std::string_view text);
std::string format_trace(const Trace& trace);

Trace load_trace(const std::filesystem::path& path);
void save_trace(const Trace& trace, const std::filesystem::path& path);

// Seeded synthetic gesture: the active axis is drawn uniformly from the
// matching recorded column's [min, max]; the remaining axes from the
// DO NOTHING column's range. Timestamps at kDefaultSamplePeriodMs spacing.
Trace generate_gesture(GestureKind kind, std::size_t n, std::uint64_t seed);

// The three recorded columns as fixture traces. Filler axes are set to 200.
Trace recorded_trace(GestureKind kind);

}  // namespace wearcomm::sensor
