// wearsim: trace generation, calibration, classification, modem BER sweeps
// and end-to-end wearable-to-appliance simulation.
//
// Exit codes: 0 success, 1 runtime or domain error, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wearcomm/classifier.hpp"
#include "wearcomm/controller.hpp"
#include "wearcomm/modem.hpp"
#include "wearcomm/rng.hpp"
#include "wearcomm/sensor.hpp"

namespace fs = std::filesystem;
using namespace wearcomm;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Sub-seed streams fanned out from --seed.
constexpr std::uint64_t kLinkStream = 1;
constexpr std::uint64_t kModemStream = 2;
constexpr std::uint64_t kGenStream = 3;

// Usage/config failure detected before any work starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string profile_path;
};

struct ProfileOverrides {
  std::optional<std::size_t> window;
  std::optional<std::size_t> debounce;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("missing ") + what + " path");
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir);
  return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error("write failed for " + path.string());
}

classifier::CalibrationProfile resolve_profile(const CommonOptions& common,
                                               const ProfileOverrides& overrides) {
  classifier::CalibrationProfile profile;
  if (!common.profile_path.empty()) {
    require_file(common.profile_path, "profile");
    profile = classifier::load_profile(common.profile_path);
  }
  if (overrides.window) profile.window_size = *overrides.window;
  if (overrides.debounce) profile.debounce_n = *overrides.debounce;
  classifier::validate(profile);
  return profile;
}

sensor::Trace read_trace(const std::string& path) {
  require_file(path, "trace");
  return sensor::load_trace(path);
}

std::vector<sensor::Trace> read_trace_dir(const std::string& dir, sensor::GestureKind kind) {
  if (dir.empty()) throw UsageError("missing trace directory");
  if (!fs::is_directory(dir)) throw UsageError("trace directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .csv traces in " + dir);

  std::vector<sensor::Trace> traces;
  for (const auto& f : files) {
    auto trace = sensor::load_trace(f);
    if (trace.label && *trace.label != kind) {
      throw UsageError(f.string() + " is labeled " + std::string(sensor::to_string(*trace.label)) +
                       ", expected " + std::string(sensor::to_string(kind)));
    }
    trace.label = kind;
    if (trace.samples.empty()) throw UsageError(f.string() + " has no samples");
    traces.push_back(std::move(trace));
  }
  return traces;
}

// --- gen -------------------------------------------------------------------

struct GenOptions {
  std::string kind = "vertical";
  std::size_t n = 64;
  std::string file;
};

int run_gen(const CommonOptions& common, const GenOptions& opt) {
  const auto kind = sensor::parse_gesture_kind(opt.kind);
  if (!kind) throw UsageError("unknown gesture kind '" + opt.kind + "'");
  if (opt.n == 0) throw UsageError("--n must be at least 1");
  const auto dir = prepare_out_dir(common.out_dir);
  const auto trace = sensor::generate_gesture(*kind, opt.n, derive_seed(common.seed, kGenStream));
  const auto path = dir / (opt.file.empty() ? "gesture_" + opt.kind + ".csv" : opt.file);
  sensor::save_trace(trace, path);
  std::cout << "wrote " << trace.samples.size() << " samples to " << path.string() << "\n";
  return 0;
}

// --- classify --------------------------------------------------------------

struct ClassifyOptions {
  std::string trace;
  ProfileOverrides overrides;
};

int run_classify(const CommonOptions& common, const ClassifyOptions& opt) {
  const auto profile = resolve_profile(common, opt.overrides);
  const auto trace = read_trace(opt.trace);
  if (trace.samples.size() < profile.window_size) {
    throw UsageError("trace has " + std::to_string(trace.samples.size()) +
                     " samples, shorter than one window of " + std::to_string(profile.window_size));
  }
  std::cout << "window,z_mean,y_mean,action\n";
  const std::span<const sensor::AccelSample> all(trace.samples);
  for (std::size_t w = 0; (w + 1) * profile.window_size <= all.size(); ++w) {
    const auto window = all.subspan(w * profile.window_size, profile.window_size);
    const auto z = classifier::window_mean(window, classifier::Axis::Z);
    const auto y = classifier::window_mean(window, classifier::Axis::Y);
    std::cout << w << ',' << fixed(z.approx(), 2) << ',' << fixed(y.approx(), 2) << ','
              << classifier::to_string(classifier::classify_window(window, profile)) << '\n';
  }
  return 0;
}

// --- calibrate -------------------------------------------------------------

struct CalibrateOptions {
  std::string on_dir;
  std::string off_dir;
  std::int64_t margin_lo = 0;
  std::int64_t margin_hi = 0;
  ProfileOverrides overrides;
};

int run_calibrate(const CommonOptions& common, const CalibrateOptions& opt) {
  const auto on = read_trace_dir(opt.on_dir, sensor::GestureKind::VerticalUpDown);
  const auto off = read_trace_dir(opt.off_dir, sensor::GestureKind::Horizontal);
  const auto dir = prepare_out_dir(common.out_dir);
  auto profile = classifier::calibrate(on, off, opt.margin_lo, opt.margin_hi);
  if (opt.overrides.window) profile.window_size = *opt.overrides.window;
  if (opt.overrides.debounce) profile.debounce_n = *opt.overrides.debounce;
  classifier::validate(profile);
  const auto path = dir / "profile.json";
  classifier::save_profile(profile, path);
  std::cout << "on_band " << classifier::to_string(profile.on_band) << "\n"
            << "off_band " << classifier::to_string(profile.off_band) << "\n"
            << "wrote " << path.string() << "\n";
  return 0;
}

// --- ber -------------------------------------------------------------------

struct BerOptions {
  double noise_min = 0.0;
  double noise_max = 2.0;
  std::size_t points = 5;
  std::size_t bits = 10000;
  double attenuation = 1.0;
};

int run_ber(const CommonOptions& common, const BerOptions& opt) {
  if (opt.points < 1) throw UsageError("--points must be at least 1");
  if (opt.bits < 1) throw UsageError("--bits must be at least 1");
  if (!(opt.noise_min >= 0.0) || !(opt.noise_max >= opt.noise_min)) {
    throw UsageError("sweep range must satisfy 0 <= noise-min <= noise-max");
  }
  codec::ModemConfig base;
  base.channel_attenuation = opt.attenuation;
  base.seed = derive_seed(common.seed, kModemStream);
  codec::validate(base);
  const auto dir = prepare_out_dir(common.out_dir);

  std::string csv = "noise_sigma,ber\n";
  for (std::size_t i = 0; i < opt.points; ++i) {
    auto cfg = base;
    cfg.noise_sigma = opt.points == 1 ? opt.noise_min
                                      : opt.noise_min + (opt.noise_max - opt.noise_min) *
                                                            static_cast<double>(i) /
                                                            static_cast<double>(opt.points - 1);
    const double ber = codec::measure_ber(cfg, opt.bits);
    csv += fixed(cfg.noise_sigma, 6) + "," + fixed(ber, 6) + "\n";
  }
  write_text(dir / "ber.csv", csv);
  std::cout << csv;
  return 0;
}

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string trace;
  double loss = 0.0;
  Millis latency = 10;
  double noise = 0.0;
  double attenuation = 1.0;
  Millis pir_at = 0;
  bool no_pir = false;
  std::optional<Millis> pir_timeout;
  std::string appliance = "light";
  ProfileOverrides overrides;
};

int run_simulate(const CommonOptions& common, const SimulateOptions& opt) {
  const auto profile = resolve_profile(common, opt.overrides);
  const auto trace = read_trace(opt.trace);
  if (trace.samples.empty()) throw UsageError("trace " + opt.trace + " has no samples");

  link::LinkConfig link_cfg;
  link_cfg.loss_probability = opt.loss;
  link_cfg.latency_ms = opt.latency;
  link_cfg.seed = derive_seed(common.seed, kLinkStream);
  link::validate(link_cfg);

  codec::ModemConfig modem_cfg;
  modem_cfg.noise_sigma = opt.noise;
  modem_cfg.channel_attenuation = opt.attenuation;
  modem_cfg.seed = derive_seed(common.seed, kModemStream);
  codec::validate(modem_cfg);

  controller::PipelineOptions pipeline_opts;
  pipeline_opts.appliance = opt.appliance;
  pipeline_opts.pir_timeout_ms = opt.pir_timeout;
  if (opt.pir_at < 0) throw UsageError("--pir-at must be non-negative");
  const auto dir = prepare_out_dir(common.out_dir);

  const auto result = controller::run_pipeline(
      trace, profile, link_cfg, modem_cfg,
      opt.no_pir ? std::nullopt : std::optional<Millis>(opt.pir_at), pipeline_opts);

  std::string log;
  for (const auto& line : result.log) log += line.text + "\n";
  write_text(dir / "events.log", log);

  const std::string final_state = result.final_state.powered ? "ON" : "OFF";
  std::string summary =
      "frames_sent,frames_delivered,frames_lost,windows,actions_emitted,transitions,resets,"
      "no_signal_periods,final_state\n";
  summary += std::to_string(result.frames_sent) + "," + std::to_string(result.frames_delivered) +
             "," + std::to_string(result.frames_lost) + "," +
             std::to_string(result.windows.size()) + "," + std::to_string(result.emitted.size()) +
             "," + std::to_string(result.transitions) + "," + std::to_string(result.resets) + "," +
             std::to_string(result.no_signal_periods) + "," + final_state + "\n";
  write_text(dir / "summary.csv", summary);
  std::cout << summary;
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_profile) {
  cmd->add_option("--seed", common.seed, "Master seed, fanned out to all random streams");
  cmd->add_option("--out", common.out_dir, "Output directory");
  if (with_profile) cmd->add_option("--profile", common.profile_path, "Calibration profile (JSON)");
}

void add_overrides(CLI::App* cmd, ProfileOverrides& o) {
  cmd->add_option("--window", o.window, "Window size override (samples)")->check(CLI::PositiveNumber);
  cmd->add_option("--debounce", o.debounce, "Debounce length override")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wearable accelerometer to home-automation link simulator"};
  app.set_config("--config", "", "INI/TOML file with the same keys as the flags; flags win");
  app.require_subcommand(1);

  CommonOptions common;

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded synthetic gesture trace");
  add_common(gen_cmd, common, false);
  gen_cmd->add_option("--kind", gen.kind, "vertical | horizontal | other")
      ->check(CLI::IsMember({"vertical", "horizontal", "other"}));
  gen_cmd->add_option("--n", gen.n, "Sample count");
  gen_cmd->add_option("--file", gen.file, "Output file name inside --out");

  ClassifyOptions classify;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a trace window by window");
  add_common(classify_cmd, common, true);
  classify_cmd->add_option("--trace", classify.trace, "Trace CSV")->required();
  add_overrides(classify_cmd, classify.overrides);

  CalibrateOptions calibrate;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Derive decision bands from labeled traces");
  add_common(calibrate_cmd, common, false);
  calibrate_cmd->add_option("--on-dir", calibrate.on_dir, "Directory of vertical (ON) traces")
      ->required();
  calibrate_cmd->add_option("--off-dir", calibrate.off_dir, "Directory of horizontal (OFF) traces")
      ->required();
  calibrate_cmd->add_option("--margin-lo", calibrate.margin_lo, "Margin below each band minimum");
  calibrate_cmd->add_option("--margin-hi", calibrate.margin_hi, "Margin above each band maximum");
  add_overrides(calibrate_cmd, calibrate.overrides);

  BerOptions ber;
  auto* ber_cmd = app.add_subcommand("ber", "Sweep modem bit error rate over noise levels");
  add_common(ber_cmd, common, false);
  ber_cmd->add_option("--noise-min", ber.noise_min, "First noise sigma");
  ber_cmd->add_option("--noise-max", ber.noise_max, "Last noise sigma");
  ber_cmd->add_option("--points", ber.points, "Number of sweep points");
  ber_cmd->add_option("--bits", ber.bits, "Bits per point");
  ber_cmd->add_option("--attenuation", ber.attenuation, "Channel attenuation in (0,1]");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the full watch to appliance pipeline");
  add_common(sim_cmd, common, true);
  sim_cmd->add_option("--trace", sim.trace, "Trace CSV")->required();
  sim_cmd->add_option("--loss", sim.loss, "Frame loss probability");
  sim_cmd->add_option("--latency", sim.latency, "Link latency in ms");
  sim_cmd->add_option("--noise", sim.noise, "Modem channel noise sigma");
  sim_cmd->add_option("--attenuation", sim.attenuation, "Modem channel attenuation in (0,1]");
  sim_cmd->add_option("--pir-at", sim.pir_at, "PIR trigger time in ms");
  sim_cmd->add_flag("--no-pir", sim.no_pir, "Never trigger the PIR sensor");
  sim_cmd->add_option("--pir-timeout", sim.pir_timeout, "Disarm after this many ms");
  sim_cmd->add_option("--appliance", sim.appliance, "Appliance name");
  add_overrides(sim_cmd, sim.overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(common, gen);
    if (*classify_cmd) return run_classify(common, classify);
    if (*calibrate_cmd) return run_calibrate(common, calibrate);
    if (*ber_cmd) return run_ber(common, ber);
    if (*sim_cmd) return run_simulate(common, sim);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sensor::TraceError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const classifier::CalibrationError& e) {
    std::cerr << "calibration failed: " << e.what() << "\n"
              << "on_band " << classifier::to_string(e.on_band()) << "\n"
              << "off_band " << classifier::to_string(e.off_band()) << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
