#include <algorithm>

#include "wearcomm/controller.hpp"

namespace wearcomm::controller {
namespace {

// Forms tumbling windows over delivered samples and feeds the debouncer.
class Windower {
 public:
  Windower(const classifier::CalibrationProfile& profile, Millis start, Millis period)
      : profile_(profile), debouncer_(profile.debounce_n), last_delivery_(start), gap_limit_(period) {
    buffer_.reserve(profile.window_size);
  }

  // Returns the debounced action emitted by this delivery, if any.
  std::optional<Action> deliver(const sensor::AccelSample& sample, PipelineResult& result) {
    note_gap(sample.t, result, true);
    last_delivery_ = sample.t;
    buffer_.push_back(sample);
    if (buffer_.size() < profile_.window_size) return std::nullopt;

    WindowVerdict verdict;
    verdict.t = sample.t;
    verdict.z_mean = classifier::window_mean(buffer_, classifier::Axis::Z);
    verdict.y_mean = classifier::window_mean(buffer_, classifier::Axis::Y);
    verdict.action = classifier::classify_window(buffer_, profile_);
    result.windows.push_back(verdict);
    buffer_.clear();
    return debouncer_.feed(verdict.action);
  }

  void finish(Millis end, PipelineResult& result) { note_gap(end, result, false); }

 private:
  void note_gap(Millis now, PipelineResult& result, bool may_reset) {
    if (now - last_delivery_ <= gap_limit_) return;
    ++result.no_signal_periods;
    if (may_reset && !buffer_.empty()) {
      buffer_.clear();
      ++result.resets;
    }
  }

  const classifier::CalibrationProfile& profile_;
  classifier::Debouncer debouncer_;
  std::vector<sensor::AccelSample> buffer_;
  Millis last_delivery_;
  Millis gap_limit_;
};

}  // namespace

PipelineResult run_pipeline(const sensor::Trace& trace, const classifier::CalibrationProfile& profile,
                            const link::LinkConfig& link_cfg, const codec::ModemConfig& modem_cfg,
                            std::optional<Millis> pir_at, const PipelineOptions& options) {
  if (trace.samples.empty()) throw ConfigError("run_pipeline needs a non-empty trace");
  sensor::validate(trace);
  classifier::validate(profile);
  if (options.sample_period_ms <= 0) throw ConfigError("sample period must be positive");
  if (pir_at && *pir_at < 0) throw ConfigError("pir time must be non-negative");

  link::LinkSimulator sim(link_cfg, modem_cfg);
  Controller ctrl(options.appliance, options.pir_timeout_ms);
  PipelineResult result;

  const Millis start = trace.samples.front().t;
  Windower windower(profile, start,
                    static_cast<Millis>(profile.window_size) * options.sample_period_ms);

  std::size_t link_seen = 0;
  std::size_t ctrl_seen = 0;
  auto pull_ctrl = [&] {
    const auto& lines = ctrl.log();
    for (; ctrl_seen < lines.size(); ++ctrl_seen) result.log.push_back(lines[ctrl_seen]);
  };
  // Copies new link events into the log and hands deliveries to the
  // classifier, so server lines follow the delivery that caused them.
  auto pump = [&] {
    const auto& events = sim.events();
    for (; link_seen < events.size(); ++link_seen) {
      const auto& ev = events[link_seen];
      for (auto& text : link::format_event(ev, link_cfg.carrier_label)) {
        result.log.push_back({ev.t, std::move(text)});
      }
      if (ev.kind != link::EventKind::FrameDelivered) continue;
      const auto frame = sim.pop_received();
      if (!frame) throw Error("receive buffer out of step with delivery events");
      if (auto action = windower.deliver(*ev.sample, result)) {
        result.emitted.push_back(*action);
        ctrl.apply_action(*action, ev.t);
        pull_ctrl();
      }
    }
  };
  auto advance = [&](Millis t) {
    sim.run_until(t);
    pump();
  };
  auto maybe_trigger_pir = [&](Millis upto) {
    if (pir_at && *pir_at <= upto && !ctrl.pir().last_trigger_t) {
      advance(std::max(sim.now(), *pir_at));
      ctrl.pir_trigger(*pir_at);
      pull_ctrl();
    }
  };

  maybe_trigger_pir(start);
  advance(start);
  sim.ap_start();
  sim.watch_set_mode(link::WatchMode::Acc);
  pump();

  for (const auto& sample : trace.samples) {
    maybe_trigger_pir(sample.t);
    advance(sample.t);
    sim.transmit_sample(sample);
    pump();
  }
  const Millis end = trace.samples.back().t + link_cfg.latency_ms;
  maybe_trigger_pir(end);
  advance(end);
  windower.finish(end, result);
  if (pir_at && !ctrl.pir().last_trigger_t) {
    ctrl.pir_trigger(*pir_at);
    pull_ctrl();
  }

  result.final_state = ctrl.appliance();
  result.frames_sent = sim.frames_sent();
  result.frames_delivered = sim.frames_delivered();
  result.frames_lost = sim.frames_lost();
  result.transitions = ctrl.transitions();
  return result;
}

}  // namespace wearcomm::controller
