#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"
#include "wearcomm/sensor.hpp"

using namespace wearcomm::sensor;
using testutil::TempDir;

namespace {

// Z column of the recorded ON gesture, typed independently of the library.
const int kZOn[17] = {277, 279, 282, 284, 265, 277, 261, 274, 269, 276, 270, 280, 270, 267, 268, 279, 272};

}  // namespace

TEST_CASE("load_trace parses rows in order") {
  TempDir dir;
  testutil::write_file(dir / "a.csv", "t_ms,x,y,z\n0,100,200,277\n20,101,199,279\n");
  const auto trace = load_trace(dir / "a.csv");
  REQUIRE(trace.samples.size() == 2);
  CHECK(trace.samples[0] == AccelSample{0, 100, 200, 277});
  CHECK(trace.samples[1].z == 279);
  CHECK_FALSE(trace.label.has_value());
}

TEST_CASE("load_trace on an empty file yields an empty trace") {
  TempDir dir;
  testutil::write_file(dir / "empty.csv", "");
  CHECK(load_trace(dir / "empty.csv").samples.empty());
  testutil::write_file(dir / "header.csv", "t_ms,x,y,z\n");
  CHECK(load_trace(dir / "header.csv").samples.empty());
}

TEST_CASE("load_trace reports errors with line numbers") {
  TempDir dir;
  SUBCASE("out of range count") {
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,100,200,2000\n");
    try {
      load_trace(dir / "t.csv");
      FAIL("expected TraceError");
    } catch (const TraceError& e) {
      CHECK(e.line() == 1);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("malformed row") {
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,1,2,3\n20,1,two,3\n");
    try {
      load_trace(dir / "t.csv");
      FAIL("expected TraceError");
    } catch (const TraceError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("too few and too many fields") {
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,1,2\n");
    CHECK_THROWS_AS(load_trace(dir / "t.csv"), TraceError);
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,1,2,3,4\n");
    CHECK_THROWS_AS(load_trace(dir / "t.csv"), TraceError);
  }
  SUBCASE("non-monotonic timestamps") {
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,1,2,3\n20,1,2,3\n20,1,2,3\n");
    try {
      load_trace(dir / "t.csv");
      FAIL("expected TraceError");
    } catch (const TraceError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("negative count") {
    testutil::write_file(dir / "t.csv", "t_ms,x,y,z\n0,-1,2,3\n");
    CHECK_THROWS_AS(load_trace(dir / "t.csv"), TraceError);
  }
  SUBCASE("missing header") {
    testutil::write_file(dir / "t.csv", "0,1,2,3\n");
    CHECK_THROWS_AS(load_trace(dir / "t.csv"), TraceError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_trace(dir / "nope.csv"), wearcomm::Error);
  }
}

TEST_CASE("save_trace round trips") {
  TempDir dir;
  SUBCASE("empty trace") {
    save_trace(Trace{}, dir / "e.csv");
    CHECK(testutil::read_file(dir / "e.csv") == "t_ms,x,y,z\n");
    CHECK(load_trace(dir / "e.csv") == Trace{});
  }
  SUBCASE("recorded Z column") {
    Trace trace;
    for (int i = 0; i < 17; ++i) trace.samples.push_back({i * 20, 200, 200, kZOn[i]});
    save_trace(trace, dir / "z.csv");
    const auto back = load_trace(dir / "z.csv");
    REQUIRE(back.samples.size() == 17);
    for (int i = 0; i < 17; ++i) CHECK(back.samples[i].z == kZOn[i]);
    CHECK(back == trace);
  }
  SUBCASE("label and seed survive; bytes are stable") {
    const auto trace = generate_gesture(GestureKind::Horizontal, 10, 99);
    save_trace(trace, dir / "g.csv");
    const auto bytes = testutil::read_file(dir / "g.csv");
    const auto back = load_trace(dir / "g.csv");
    CHECK(back == trace);
    save_trace(back, dir / "g2.csv");
    CHECK(testutil::read_file(dir / "g2.csv") == bytes);
  }
  SUBCASE("property: every generatable trace round trips") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto kind = static_cast<GestureKind>(seed % 3);
      const auto trace = generate_gesture(kind, 1 + seed % 40, seed * 7919);
      save_trace(trace, dir / "p.csv");
      REQUIRE(load_trace(dir / "p.csv") == trace);
    }
  }
}

TEST_CASE("save_trace rejects invalid traces and unwritable paths") {
  TempDir dir;
  Trace bad;
  bad.samples = {{0, 1, 2, 3}, {0, 1, 2, 3}};
  CHECK_THROWS_AS(save_trace(bad, dir / "b.csv"), TraceError);
  Trace ok;
  ok.samples = {{0, 1, 2, 3}};
  CHECK_THROWS_AS(save_trace(ok, dir.path() / "missing_dir" / "x.csv"), wearcomm::Error);
}

TEST_CASE("generate_gesture draws from the recorded column ranges") {
  const auto vertical = generate_gesture(GestureKind::VerticalUpDown, 17, 1);
  REQUIRE(vertical.samples.size() == 17);
  for (const auto& s : vertical.samples) {
    CHECK(s.z >= 261);
    CHECK(s.z <= 284);
  }
  const auto horizontal = generate_gesture(GestureKind::Horizontal, 18, 1);
  for (const auto& s : horizontal.samples) {
    CHECK(s.y >= 323);
    CHECK(s.y <= 381);
  }
  const auto other = generate_gesture(GestureKind::Other, 50, 1);
  for (const auto& s : other.samples) {
    for (int v : {s.x, s.y, s.z}) {
      CHECK(v >= 169);
      CHECK(v <= 230);
    }
  }
  CHECK(vertical.label == GestureKind::VerticalUpDown);
  CHECK(vertical.seed == 1u);
  CHECK(vertical.samples[1].t - vertical.samples[0].t == kDefaultSamplePeriodMs);
}

TEST_CASE("generate_gesture is a pure function of its arguments") {
  CHECK(generate_gesture(GestureKind::VerticalUpDown, 32, 5) ==
        generate_gesture(GestureKind::VerticalUpDown, 32, 5));
  CHECK_FALSE(generate_gesture(GestureKind::VerticalUpDown, 32, 5) ==
              generate_gesture(GestureKind::VerticalUpDown, 32, 6));
  CHECK_THROWS_AS(generate_gesture(GestureKind::Other, 0, 1), wearcomm::ConfigError);
}

TEST_CASE("generated values cover the whole range over many draws") {
  const auto trace = generate_gesture(GestureKind::VerticalUpDown, 5000, 3);
  int lo = 1024, hi = -1;
  for (const auto& s : trace.samples) {
    lo = std::min(lo, s.z);
    hi = std::max(hi, s.z);
  }
  CHECK(lo == 261);
  CHECK(hi == 284);
}

TEST_CASE("recorded fixtures match the bundled files") {
  const std::string root = WEARCOMM_DATA_DIR;
  CHECK(load_trace(root + "/recorded/on/recorded_z_on.csv") == recorded_trace(GestureKind::VerticalUpDown));
  CHECK(load_trace(root + "/recorded/off/recorded_y_off.csv") == recorded_trace(GestureKind::Horizontal));
  CHECK(load_trace(root + "/recorded/other/recorded_other.csv") == recorded_trace(GestureKind::Other));
  const auto on = recorded_trace(GestureKind::VerticalUpDown);
  REQUIRE(on.samples.size() == 17);
  for (int i = 0; i < 17; ++i) CHECK(on.samples[i].z == kZOn[i]);
}
