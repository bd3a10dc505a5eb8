#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "wearcomm/classifier.hpp"

namespace wearcomm::classifier {
namespace {

using nlohmann::json;

std::int64_t read_int(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("profile key '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Band read_band(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw ConfigError(std::string("profile key '") + key + "' must be [lo, hi] integers");
  }
  return {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
}

}  // namespace

CalibrationProfile parse_profile(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("profile must be a JSON object");

  static const std::set<std::string> known{"on_band", "off_band", "window_size", "debounce_n"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown profile key '" + key + "'");
  }
  for (const auto& key : known) {
    if (!doc.contains(key)) throw ConfigError("profile is missing key '" + key + "'");
  }

  CalibrationProfile profile;
  profile.on_band = read_band(doc, "on_band");
  profile.off_band = read_band(doc, "off_band");
  const auto window = read_int(doc, "window_size");
  const auto debounce = read_int(doc, "debounce_n");
  if (window < 1 || debounce < 1) throw ConfigError("window_size and debounce_n must be at least 1");
  profile.window_size = static_cast<std::size_t>(window);
  profile.debounce_n = static_cast<std::size_t>(debounce);
  validate(profile);
  return profile;
}

std::string format_profile(const CalibrationProfile& profile) {
  // Fixed key order keeps the file byte-stable.
  std::ostringstream out;
  out << "{\n"
      << "  \"on_band\": [" << profile.on_band.lo << ", " << profile.on_band.hi << "],\n"
      << "  \"off_band\": [" << profile.off_band.lo << ", " << profile.off_band.hi << "],\n"
      << "  \"window_size\": " << profile.window_size << ",\n"
      << "  \"debounce_n\": " << profile.debounce_n << "\n"
      << "}\n";
  return out.str();
}

CalibrationProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_profile(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path) {
  validate(profile);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write profile " + path.string());
  out << format_profile(profile);
  if (!out.flush()) throw Error("write failed for " + path.string());
}

}  // namespace wearcomm::classifier
