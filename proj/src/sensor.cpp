#include "wearcomm/sensor.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wearcomm/rng.hpp"
#include "wearcomm/recorded.hpp"

namespace wearcomm::sensor {
namespace {

constexpr std::string_view kHeader = "t_ms,x,y,z";
constexpr int kFiller = 200;

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

AccelSample parse_row(std::string_view row, std::size_t line) {
  std::int64_t fields[4];
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = row.find(',', start);
    const auto field = row.substr(start, comma == std::string_view::npos ? row.npos : comma - start);
    if (count == 4 || !parse_number(field, fields[count])) {
      throw TraceError("line " + std::to_string(line) + ": malformed row '" + std::string(row) + "'",
                       line);
    }
    ++count;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != 4) {
    throw TraceError("line " + std::to_string(line) + ": expected 4 fields, got " +
                         std::to_string(count),
                     line);
  }
  for (int i = 1; i < 4; ++i) {
    if (fields[i] < 0 || fields[i] > kMaxCount) {
      throw TraceError("line " + std::to_string(line) + ": count " + std::to_string(fields[i]) +
                           " outside 0.." + std::to_string(kMaxCount),
                       line);
    }
  }
  if (fields[0] < 0) {
    throw TraceError("line " + std::to_string(line) + ": negative timestamp", line);
  }
  return {fields[0], static_cast<int>(fields[1]), static_cast<int>(fields[2]),
          static_cast<int>(fields[3])};
}

void parse_metadata(std::string_view body, Trace& trace, std::size_t line) {
  const auto eq = body.find('=');
  const auto key = body.substr(0, eq);
  const auto value = eq == std::string_view::npos ? std::string_view{} : body.substr(eq + 1);
  if (key == "label") {
    trace.label = parse_gesture_kind(value);
    if (!trace.label) throw TraceError("unknown label '" + std::string(value) + "'", line);
  } else if (key == "seed") {
    std::uint64_t seed = 0;
    if (!parse_number(value, seed)) throw TraceError("bad seed '" + std::string(value) + "'", line);
    trace.seed = seed;
  }
  // Other comment lines are ignored.
}

}  // namespace

std::string_view to_string(GestureKind kind) {
  switch (kind) {
    case GestureKind::VerticalUpDown: return "vertical";
    case GestureKind::Horizontal: return "horizontal";
    case GestureKind::Other: return "other";
  }
  return "?";
}

std::optional<GestureKind> parse_gesture_kind(std::string_view text) {
  if (text == "vertical") return GestureKind::VerticalUpDown;
  if (text == "horizontal") return GestureKind::Horizontal;
  if (text == "other") return GestureKind::Other;
  return std::nullopt;
}

void validate(const Trace& trace) {
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    for (int v : {s.x, s.y, s.z}) {
      if (v < 0 || v > kMaxCount) {
        throw TraceError("sample " + std::to_string(i + 1) + ": count " + std::to_string(v) +
                             " outside 0.." + std::to_string(kMaxCount),
                         i + 1);
      }
    }
    if (s.t < 0) throw TraceError("sample " + std::to_string(i + 1) + ": negative timestamp", i + 1);
    if (i > 0 && s.t <= trace.samples[i - 1].t) {
      throw TraceError("sample " + std::to_string(i + 1) + ": timestamp not strictly increasing",
                       i + 1);
    }
  }
  if (trace.label && trace.samples.empty()) throw TraceError("labeled trace is empty", 0);
}

Trace parse_trace(std::string_view text) {
  Trace trace;
  std::size_t data_line = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      auto body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      parse_metadata(body, trace, data_line);
      continue;
    }
    if (!seen_header) {
      if (line != kHeader) throw TraceError("missing header '" + std::string(kHeader) + "'", 0);
      seen_header = true;
      continue;
    }
    ++data_line;
    auto sample = parse_row(line, data_line);
    if (!trace.samples.empty() && sample.t <= trace.samples.back().t) {
      throw TraceError("line " + std::to_string(data_line) + ": timestamp " +
                           std::to_string(sample.t) + " not strictly increasing",
                       data_line);
    }
    trace.samples.push_back(sample);
  }
  if (trace.label && trace.samples.empty()) throw TraceError("labeled trace is empty", 0);
  return trace;
}

std::string format_trace(const Trace& trace) {
  std::ostringstream out;
  if (trace.label) out << "# label=" << to_string(*trace.label) << '\n';
  if (trace.seed) out << "# seed=" << *trace.seed << '\n';
  out << kHeader << '\n';
  for (const auto& s : trace.samples) {
    out << s.t << ',' << s.x << ',' << s.y << ',' << s.z << '\n';
  }
  return out.str();
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open trace file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  // An empty file is an empty trace.
  if (text.empty()) return {};
  try {
    return parse_trace(text);
  } catch (const TraceError& e) {
    throw TraceError(path.string() + ": " + e.what(), e.line());
  }
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
  validate(trace);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write trace file " + path.string());
  out << format_trace(trace);
  if (!out.flush()) throw Error("write failed for " + path.string());
}

Trace generate_gesture(GestureKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("generate_gesture: sample count must be at least 1");

  constexpr auto on = recorded::range_of(recorded::kZOn);
  constexpr auto off = recorded::range_of(recorded::kYOff);
  constexpr auto rest = recorded::range_of(recorded::kOther);

  Rng rng(seed);
  auto draw = [&rng](recorded::Range r) { return static_cast<int>(rng.uniform_int(r.lo, r.hi)); };

  Trace trace;
  trace.label = kind;
  trace.seed = seed;
  trace.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    AccelSample s;
    s.t = static_cast<Millis>(i) * kDefaultSamplePeriodMs;
    s.x = draw(rest);
    s.y = draw(kind == GestureKind::Horizontal ? off : rest);
    s.z = draw(kind == GestureKind::VerticalUpDown ? on : rest);
    trace.samples.push_back(s);
  }
  return trace;
}

Trace recorded_trace(GestureKind kind) {
  auto build = [kind](const auto& column) {
    Trace trace;
    trace.label = kind;
    for (std::size_t i = 0; i < column.size(); ++i) {
      AccelSample s{static_cast<Millis>(i) * kDefaultSamplePeriodMs, kFiller, kFiller, kFiller};
      if (kind == GestureKind::VerticalUpDown) s.z = column[i];
      if (kind == GestureKind::Horizontal) s.y = column[i];
      if (kind == GestureKind::Other) s.y = s.z = column[i];
      trace.samples.push_back(s);
    }
    return trace;
  };
  switch (kind) {
    case GestureKind::VerticalUpDown: return build(recorded::kZOn);
    case GestureKind::Horizontal: return build(recorded::kYOff);
    case GestureKind::Other: return build(recorded::kOther);
  }
  return {};
}

}  // namespace wearcomm::sensor
