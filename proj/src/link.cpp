#include "wearcomm/link.hpp"

#include <cmath>
#include <sstream>

namespace wearcomm::link {
namespace {

std::string sample_detail(std::uint64_t seq, const AccelSample& s) {
  std::ostringstream out;
  out << "seq=" << seq << " x=" << s.x << " y=" << s.y << " z=" << s.z;
  return out.str();
}

}  // namespace

void validate(const LinkConfig& cfg) {
  if (!(cfg.loss_probability >= 0.0 && cfg.loss_probability <= 1.0)) {
    throw ConfigError("loss_probability must lie in [0, 1]");
  }
  if (cfg.latency_ms < 0) throw ConfigError("latency must be non-negative");
  if (cfg.rx_fifo_capacity == 0) throw ConfigError("rx_fifo_capacity must be positive");
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ApStarted: return "AP_STARTED";
    case EventKind::ModeSet: return "MODE_SET";
    case EventKind::FrameSent: return "FRAME_SENT";
    case EventKind::FrameDelivered: return "FRAME_DELIVERED";
    case EventKind::FrameLost: return "FRAME_LOST";
    case EventKind::AcquireAnnounced: return "ACQUIRE_ANNOUNCED";
  }
  return "?";
}

std::string_view to_string(LossCause cause) {
  switch (cause) {
    case LossCause::Channel: return "loss";
    case LossCause::Corrupt: return "corrupt";
    case LossCause::Overflow: return "overflow";
  }
  return "?";
}

std::vector<std::string> format_event(const LinkEvent& event, std::string_view carrier_label) {
  std::string detail;
  switch (event.kind) {
    case EventKind::ApStarted: detail = carrier_label; break;
    case EventKind::ModeSet: detail = codec::to_string(*event.mode); break;
    case EventKind::FrameSent:
    case EventKind::FrameDelivered: detail = sample_detail(event.seq, *event.sample); break;
    case EventKind::FrameLost:
      detail = "seq=" + std::to_string(event.seq) + " cause=" + std::string(to_string(*event.cause));
      break;
    case EventKind::AcquireAnnounced: break;
  }
  std::string head = "[t=" + std::to_string(event.t) + "] " + std::string(to_string(event.kind));
  if (!detail.empty()) head += " " + detail;

  std::vector<std::string> lines{std::move(head)};
  if (event.kind == EventKind::ApStarted) lines.emplace_back(kApStartedMessage);
  if (event.kind == EventKind::AcquireAnnounced) lines.emplace_back(kAcquiringMessage);
  return lines;
}

LinkSimulator::LinkSimulator(LinkConfig cfg, std::optional<codec::ModemConfig> phy)
    : cfg_(std::move(cfg)),
      phy_(std::move(phy)),
      loss_rng_(derive_seed(cfg_.seed, 0x4c4f5353)),
      rx_fifo_(cfg_.rx_fifo_capacity) {
  validate(cfg_);
  if (phy_) codec::validate(*phy_);
}

LinkEvent& LinkSimulator::record(LinkEvent event) {
  events_.push_back(std::move(event));
  return events_.back();
}

LinkEvent LinkSimulator::ap_start() {
  if (ap_state_ != AccessPointState::NotStarted) throw ProtocolError("access point already started");
  ap_state_ = AccessPointState::Started;
  return record({.t = now_, .kind = EventKind::ApStarted});
}

LinkEvent LinkSimulator::watch_set_mode(WatchMode mode) {
  if (ap_state_ == AccessPointState::NotStarted) {
    throw ProtocolError("cannot set watch mode: access point not started");
  }
  // Half-duplex: the acknowledgment waits until the channel is clear.
  if (!pending_.empty()) run_until(std::max(now_, pending_.rbegin()->first.first));
  mode_ = mode;
  return record({.t = now_, .kind = EventKind::ModeSet, .mode = mode});
}

codec::CodecFrame LinkSimulator::send_through_phy(const codec::CodecFrame& frame, std::uint64_t seq,
                                                  bool& corrupted) const {
  corrupted = false;
  if (!phy_) return frame;
  auto cfg = *phy_;
  cfg.seed = derive_seed(phy_->seed, seq);
  const auto bits = codec::serialize(frame);
  const auto received = codec::demodulate(codec::channel_apply(codec::modulate(bits, cfg), cfg), cfg);
  try {
    auto decoded = codec::deserialize(received);
    // A multi-bit error can pass the CRC; the mode tag must still be ACC.
    if (decoded.mode() != codec::Mode::Acc) corrupted = true;
    return decoded;
  } catch (const codec::CodecError&) {
    corrupted = true;
    return frame;
  }
}

LinkEvent LinkSimulator::transmit_sample(const AccelSample& sample) {
  if (ap_state_ == AccessPointState::NotStarted) {
    throw ProtocolError("cannot transmit: access point not started");
  }
  if (mode_ != WatchMode::Acc) {
    throw ProtocolError("cannot transmit: watch is in " + std::string(codec::to_string(mode_)) +
                        " mode, not ACC");
  }
  const codec::CodecFrame frame(codec::Mode::Acc, static_cast<std::uint16_t>(sample.x),
                                static_cast<std::uint16_t>(sample.y),
                                static_cast<std::uint16_t>(sample.z));
  const auto seq = next_seq_++;
  // Drawn for every frame so the loss pattern depends only on the seed.
  const bool channel_loss = loss_rng_.bernoulli(cfg_.loss_probability);
  bool corrupted = false;
  auto decoded = send_through_phy(frame, seq, corrupted);

  InFlight flight{seq, std::nullopt, channel_loss};
  if (!corrupted) flight.decoded = decoded;
  pending_.emplace(std::make_pair(now_ + cfg_.latency_ms, seq), flight);
  ++sent_;

  AccelSample as_sent = sample;
  as_sent.t = now_;
  return record({.t = now_, .kind = EventKind::FrameSent, .seq = seq, .sample = as_sent});
}

void LinkSimulator::resolve(Millis t, const InFlight& frame, std::vector<LinkEvent>& out) {
  auto lose = [&](LossCause cause) {
    ++lost_;
    out.push_back(record({.t = t, .kind = EventKind::FrameLost, .seq = frame.seq, .cause = cause}));
  };
  if (frame.channel_loss) return lose(LossCause::Channel);
  if (!frame.decoded) return lose(LossCause::Corrupt);
  if (!rx_fifo_.push(*frame.decoded)) return lose(LossCause::Overflow);

  ++delivered_;
  const AccelSample received{t, frame.decoded->x(), frame.decoded->y(), frame.decoded->z()};
  out.push_back(
      record({.t = t, .kind = EventKind::FrameDelivered, .seq = frame.seq, .sample = received}));
  if (ap_state_ == AccessPointState::Started) {
    ap_state_ = AccessPointState::Acquiring;
    out.push_back(record({.t = t, .kind = EventKind::AcquireAnnounced}));
  }
}

std::vector<LinkEvent> LinkSimulator::run_until(Millis t) {
  if (t < now_) {
    throw ConfigError("run_until(" + std::to_string(t) + ") is before current time " +
                      std::to_string(now_));
  }
  std::vector<LinkEvent> out;
  while (!pending_.empty() && pending_.begin()->first.first <= t) {
    auto node = pending_.extract(pending_.begin());
    now_ = node.key().first;
    resolve(now_, node.mapped(), out);
  }
  now_ = t;
  return out;
}

std::vector<std::string> LinkSimulator::log_lines() const {
  std::vector<std::string> lines;
  for (const auto& e : events_) {
    for (auto& line : format_event(e, cfg_.carrier_label)) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace wearcomm::link
