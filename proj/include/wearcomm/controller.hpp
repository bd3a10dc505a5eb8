#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wearcomm/classifier.hpp"
#include "wearcomm/link.hpp"
#include "wearcomm/modem.hpp"
#include "wearcomm/sensor.hpp"

namespace wearcomm::controller {

using classifier::Action;

struct LogLine {
  Millis t = 0;
  std::string text;
};

enum class PirStatus { Unarmed, Armed };

struct PirState {
  PirStatus status = PirStatus::Unarmed;
  std::optional<Millis> last_trigger_t;
};

struct ApplianceState {
  std::string name;
  bool powered = false;

  friend bool operator==(const ApplianceState&, const ApplianceState&) = default;
};

// Home-automation server: a PIR sensor arms it, debounced gesture actions
// switch the appliance while armed.
//
// Arming is sticky unless a timeout is given, in which case an action
// arriving more than `pir_timeout_ms` after the last trigger is ignored.
class Controller {
 public:
  explicit Controller(std::string appliance = "light",
                      std::optional<Millis> pir_timeout_ms = std::nullopt);

  void pir_trigger(Millis t);
  // Logs the action; switches the appliance only when armed and the state
  // actually changes.
  ApplianceState apply_action(Action action, Millis t);

  bool armed_at(Millis t) const;
  const PirState& pir() const { return pir_; }
  const ApplianceState& appliance() const { return appliance_; }
  const std::vector<LogLine>& log() const { return log_; }
  std::size_t transitions() const { return transitions_; }

 private:
  void write(Millis t, std::string text);

  ApplianceState appliance_;
  std::optional<Millis> pir_timeout_ms_;
  PirState pir_;
  std::vector<LogLine> log_;
  std::size_t transitions_ = 0;
};

struct PipelineOptions {
  std::string appliance = "light";
  std::optional<Millis> pir_timeout_ms;
  // Nominal sensor period; a delivery gap longer than window_size periods
  // counts as a no-signal period.
  Millis sample_period_ms = sensor::kDefaultSamplePeriodMs;
};

struct WindowVerdict {
  Millis t = 0;
  classifier::Mean z_mean;
  classifier::Mean y_mean;
  Action action = Action::DoNothing;
};

struct PipelineResult {
  ApplianceState final_state;
  std::vector<LogLine> log;  // link and server lines, in virtual-time order
  std::vector<WindowVerdict> windows;
  std::vector<Action> emitted;  // debounced actions handed to the controller
  std::uint64_t frames_sent = 0;
  std::uint64_t frames_delivered = 0;
  std::uint64_t frames_lost = 0;
  std::size_t transitions = 0;
  // Partially filled windows discarded after a no-signal period.
  std::size_t resets = 0;
  std::size_t no_signal_periods = 0;

  std::vector<std::string> log_text() const;
};

// End to end: AP start, watch to ACC, every sample through codec and link,
// delivered samples windowed, classified, debounced and applied under the
// PIR gate (triggered at pir_at, never if empty).
PipelineResult run_pipeline(const sensor::Trace& trace, const classifier::CalibrationProfile& profile,
                            const link::LinkConfig& link_cfg, const codec::ModemConfig& modem_cfg,
                            std::optional<Millis> pir_at, const PipelineOptions& options = {});

}  // namespace wearcomm::controller
