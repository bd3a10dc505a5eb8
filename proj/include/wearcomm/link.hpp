#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wearcomm/codec.hpp"
#include "wearcomm/modem.hpp"
#include "wearcomm/rng.hpp"
#include "wearcomm/sensor.hpp"

namespace wearcomm::link {

using WatchMode = codec::Mode;
using sensor::AccelSample;

inline constexpr std::string_view kApStartedMessage =
    "Access point started. Now start watch in ACC, PPT or Synch mode.";
inline constexpr std::string_view kAcquiringMessage = "Acquiring data from accelerometer sensor";

enum class AccessPointState { NotStarted, Started, Acquiring };

struct LinkConfig {
  double loss_probability = 0.0;
  Millis latency_ms = 10;
  std::uint64_t seed = 0;
  std::string carrier_label = "900 MHz";
  // Receive buffer between the access point and the host.
  std::size_t rx_fifo_capacity = 64;
};

void validate(const LinkConfig& cfg);

enum class EventKind { ApStarted, ModeSet, FrameSent, FrameDelivered, FrameLost, AcquireAnnounced };

enum class LossCause { Channel, Corrupt, Overflow };

std::string_view to_string(EventKind kind);
std::string_view to_string(LossCause cause);

struct LinkEvent {
  Millis t = 0;
  EventKind kind = EventKind::ApStarted;
  std::uint64_t seq = 0;                 // frame sequence number, frame events only
  std::optional<AccelSample> sample = std::nullopt;   // FrameSent: as sent; FrameDelivered: as decoded
  std::optional<WatchMode> mode = std::nullopt;       // ModeSet
  std::optional<LossCause> cause = std::nullopt;      // FrameLost

  friend bool operator==(const LinkEvent&, const LinkEvent&) = default;
};

// `[t=<ms>] <KIND> <detail>`, followed by the verbatim control-center
// message for ApStarted and AcquireAnnounced.
std::vector<std::string> format_event(const LinkEvent& event, std::string_view carrier_label);

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Watch and access point over a lossy half-duplex link in virtual time.
//
// Each watch frame is in flight over [sent, sent + latency) and resolves to
// exactly one FrameDelivered or FrameLost. The access point only transmits
// (start beacon, mode acknowledgment) while nothing is in flight; a mode
// change first drains outstanding frames, advancing the clock if needed.
//
// When a ModemConfig is supplied, every frame is serialized, modulated,
// passed through the noisy channel and decoded; frames failing the codec
// checks are lost with LossCause::Corrupt.
class LinkSimulator {
 public:
  explicit LinkSimulator(LinkConfig cfg, std::optional<codec::ModemConfig> phy = std::nullopt);

  LinkEvent ap_start();
  LinkEvent watch_set_mode(WatchMode mode);
  // Sends at the current virtual time; returns the FrameSent event.
  LinkEvent transmit_sample(const AccelSample& sample);
  // Resolves every frame due at or before t, then sets the clock to t.
  std::vector<LinkEvent> run_until(Millis t);

  Millis now() const { return now_; }
  AccessPointState ap_state() const { return ap_state_; }
  WatchMode watch_mode() const { return mode_; }
  bool in_flight() const { return !pending_.empty(); }
  const LinkConfig& config() const { return cfg_; }

  const std::vector<LinkEvent>& events() const { return events_; }
  std::vector<std::string> log_lines() const;

  // Frames waiting in the access point's receive buffer.
  std::optional<codec::CodecFrame> pop_received() { return rx_fifo_.pop(); }

  std::uint64_t frames_sent() const { return sent_; }
  std::uint64_t frames_delivered() const { return delivered_; }
  std::uint64_t frames_lost() const { return lost_; }

 private:
  struct InFlight {
    std::uint64_t seq;
    std::optional<codec::CodecFrame> decoded;  // empty when the codec rejected it
    bool channel_loss;
  };

  LinkEvent& record(LinkEvent event);
  codec::CodecFrame send_through_phy(const codec::CodecFrame& frame, std::uint64_t seq,
                                     bool& corrupted) const;
  void resolve(Millis t, const InFlight& frame, std::vector<LinkEvent>& out);

  LinkConfig cfg_;
  std::optional<codec::ModemConfig> phy_;
  Rng loss_rng_;
  Millis now_ = 0;
  AccessPointState ap_state_ = AccessPointState::NotStarted;
  WatchMode mode_ = WatchMode::Idle;
  std::uint64_t next_seq_ = 0;
  std::map<std::pair<Millis, std::uint64_t>, InFlight> pending_;
  std::vector<LinkEvent> events_;
  codec::Fifo rx_fifo_;
  std::uint64_t sent_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t lost_ = 0;
};

}  // namespace wearcomm::link
