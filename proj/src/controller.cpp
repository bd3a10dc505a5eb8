#include "wearcomm/controller.hpp"

namespace wearcomm::controller {

Controller::Controller(std::string appliance, std::optional<Millis> pir_timeout_ms)
    : appliance_{std::move(appliance), false}, pir_timeout_ms_(pir_timeout_ms) {
  if (pir_timeout_ms_ && *pir_timeout_ms_ < 0) throw ConfigError("pir timeout must be non-negative");
}

void Controller::write(Millis t, std::string text) {
  log_.push_back({t, "[t=" + std::to_string(t) + "] " + std::move(text)});
}

void Controller::pir_trigger(Millis t) {
  pir_.status = PirStatus::Armed;
  pir_.last_trigger_t = t;
  write(t, "PIR TRIGGERED");
}

bool Controller::armed_at(Millis t) const {
  if (pir_.status != PirStatus::Armed) return false;
  if (!pir_timeout_ms_) return true;
  return t - *pir_.last_trigger_t <= *pir_timeout_ms_;
}

ApplianceState Controller::apply_action(Action action, Millis t) {
  write(t, "ACTION " + std::string(classifier::to_string(action)));
  if (!armed_at(t) || action == Action::DoNothing) return appliance_;
  const bool want = action == Action::On;
  if (appliance_.powered != want) {
    appliance_.powered = want;
    ++transitions_;
    write(t, "APPLIANCE " + appliance_.name + " -> " + (want ? "ON" : "OFF"));
  }
  return appliance_;
}

std::vector<std::string> PipelineResult::log_text() const {
  std::vector<std::string> lines;
  lines.reserve(log.size());
  for (const auto& l : log) lines.push_back(l.text);
  return lines;
}

}  // namespace wearcomm::controller
