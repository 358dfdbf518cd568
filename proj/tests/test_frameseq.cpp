#include <doctest.h>

#include <fstream>

#include "physiq/frameseq.hpp"
#include "physiq/png_io.hpp"
#include "helpers.hpp"

using namespace physiq;
using namespace physiq::testing;

TEST_CASE("FrameSequence enforces its invariants at construction") {
  CHECK_THROWS_AS(FrameSequence({}, 30.0), std::invalid_argument);
  CHECK_THROWS_AS(FrameSequence({gray_frame(4, 4, 0)}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FrameSequence({gray_frame(4, 4, 0)}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(FrameSequence({gray_frame(4, 4, 0), gray_frame(5, 4, 0)}, 30.0),
                  std::invalid_argument);
}

TEST_CASE("load_sequence reads a numbered frame directory with metadata") {
  TempDir dir("load");
  Rng rng(42);
  FrameSequence seq = random_sequence(rng, 240, 30.0, 6, 5);
  seq.scenario_id = "dominoes";
  seq.switch_index = 89;
  save_sequence(seq, dir.path() / "frames");

  const FrameSequence loaded = load_sequence(dir.path() / "frames");
  CHECK(loaded.frame_count() == 240);
  CHECK(loaded.fps == 30.0);
  CHECK(loaded.duration_seconds() == doctest::Approx(8.0));
  CHECK(loaded.scenario_id == "dominoes");
  CHECK(loaded.switch_index == 89);
  CHECK(same_frames(loaded, seq));
}

TEST_CASE("single-frame sequence has duration 1/fps") {
  TempDir dir("single");
  Rng rng(1);
  save_sequence(random_sequence(rng, 1, 30.0, 4, 4), dir.path() / "one");
  const FrameSequence loaded = load_sequence(dir.path() / "one");
  CHECK(loaded.frame_count() == 1);
  CHECK(loaded.duration_seconds() == doctest::Approx(1.0 / 30.0));
}

TEST_CASE("PNG round trip is bit exact and fps survives exactly") {
  TempDir dir("roundtrip");
  Rng rng(7);
  // Awkward fps values must survive the JSON round trip unchanged.
  int i = 0;
  for (double fps : {30.0, 8.0, 29.97, 16.000001}) {
    FrameSequence seq = random_sequence(rng, 5, fps, 9, 7);
    const auto path = dir.path() / ("seq_" + std::to_string(i++));
    save_sequence(seq, path);
    const FrameSequence loaded = load_sequence(path);
    CHECK(loaded.fps == fps);
    CHECK(same_frames(loaded, seq));
  }
}

TEST_CASE("raw .piqf round trip is bit exact") {
  TempDir dir("piqf");
  Rng rng(11);
  FrameSequence seq = random_sequence(rng, 12, 8.0, 16, 10);
  seq.scenario_id = "raw";
  seq.switch_index = 23;
  save_sequence(seq, dir.path() / "video.piqf");
  CHECK(std::filesystem::exists(dir.path() / "video.meta.json"));

  const FrameSequence loaded = load_sequence(dir.path() / "video.piqf");
  CHECK(loaded.fps == 8.0);
  CHECK(loaded.scenario_id == "raw");
  CHECK(loaded.switch_index == 23);
  CHECK(same_frames(loaded, seq));
}

TEST_CASE("metadata mismatches are rejected") {
  TempDir dir("mismatch");
  Rng rng(3);
  save_sequence(random_sequence(rng, 9, 30.0, 4, 4), dir.path() / "frames");

  SUBCASE("missing meta.json") {
    std::filesystem::remove(dir.path() / "frames" / "meta.json");
    CHECK_THROWS_WITH_AS(load_sequence(dir.path() / "frames"),
                         doctest::Contains("missing metadata"), std::runtime_error);
  }
  SUBCASE("metadata declares 10 frames, directory has 9") {
    std::ofstream meta(dir.path() / "frames" / "meta.json");
    meta << R"({"fps":30,"width":4,"height":4,"num_frames":10})";
    meta.close();
    CHECK_THROWS_WITH_AS(load_sequence(dir.path() / "frames"),
                         doctest::Contains("frame count mismatch"), std::runtime_error);
  }
  SUBCASE("directory holds more frames than metadata declares") {
    std::ofstream meta(dir.path() / "frames" / "meta.json");
    meta << R"({"fps":30,"width":4,"height":4,"num_frames":8})";
    meta.close();
    CHECK_THROWS_WITH_AS(load_sequence(dir.path() / "frames"),
                         doctest::Contains("frame count mismatch"), std::runtime_error);
  }
  SUBCASE("inhomogeneous frame sizes") {
    write_png_rgb(dir.path() / "frames" / "frame_000004.png", gray_frame(5, 4, 0));
    CHECK_THROWS(load_sequence(dir.path() / "frames"));
  }
  SUBCASE("unreadable image") {
    std::ofstream bad(dir.path() / "frames" / "frame_000004.png", std::ios::binary);
    bad << "not a png";
    bad.close();
    CHECK_THROWS_WITH_AS(load_sequence(dir.path() / "frames"),
                         doctest::Contains("unreadable image"), std::runtime_error);
  }
}

TEST_CASE("resample_fps interpolates {0,30} at 1 fps into {0,15,30}") {
  const FrameSequence seq = gray_sequence({0, 30}, 1.0);
  // duration 2 s; 1.5 fps makes n_new = 3
  const FrameSequence out = resample_fps(seq, 1.5);
  REQUIRE(out.frame_count() == 3);
  CHECK(out.frames[0].r(0, 0) == 0);
  CHECK(out.frames[1].r(0, 0) == 15);
  CHECK(out.frames[2].r(0, 0) == 30);
  CHECK(out.fps == 1.5);
}

TEST_CASE("resampling at the original rate is bit identical") {
  Rng rng(17);
  for (double fps : {30.0, 8.0, 24.0}) {
    const FrameSequence seq = random_sequence(rng, 10, fps, 8, 6);
    const FrameSequence out = resample_fps(seq, fps);
    CHECK(same_frames(out, seq));
  }
}

TEST_CASE("8 s at 30 fps resampled to 24 fps yields 192 frames") {
  Rng rng(23);
  const FrameSequence seq = random_sequence(rng, 240, 30.0, 4, 4);
  const FrameSequence out = resample_fps(seq, 24.0);
  CHECK(out.frame_count() == 192);
  CHECK(out.fps == 24.0);
}

TEST_CASE("resampling endpoints equal the input endpoints") {
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + rng.below(20);
    const double fps = 1.0 + rng.unit() * 59.0;
    const double fps_new = 1.0 + rng.unit() * 59.0;
    const FrameSequence seq = random_sequence(rng, n, fps, 5, 4);
    const FrameSequence out = resample_fps(seq, fps_new);
    if (out.frame_count() >= 2) {
      CHECK(out.frames.front() == seq.frames.front());
      CHECK(out.frames.back() == seq.frames.back());
    }
  }
}

TEST_CASE("duration is preserved within one output frame") {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + rng.below(60);
    const double fps = 0.5 + rng.unit() * 59.5;
    const double fps_new = 0.5 + rng.unit() * 59.5;
    const FrameSequence seq = random_sequence(rng, n, fps, 2, 2);
    const FrameSequence out = resample_fps(seq, fps_new);
    const double in_duration = seq.duration_seconds();
    const double out_duration = out.duration_seconds();
    CHECK(std::abs(out_duration - in_duration) <= 1.0 / fps_new + 1e-12);
  }
}

TEST_CASE("degenerate single-output resampling keeps the first frame") {
  const FrameSequence seq = gray_sequence({10, 200}, 30.0);  // duration 1/15 s
  const FrameSequence out = resample_fps(seq, 1.0);          // rounds to 0, clamped to 1
  REQUIRE(out.frame_count() == 1);
  CHECK(out.frames[0] == seq.frames[0]);
}

TEST_CASE("resample_fps rejects bad arguments") {
  const FrameSequence seq = gray_sequence({1, 2}, 10.0);
  CHECK_THROWS_AS(resample_fps(seq, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(resample_fps(seq, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(resample_fps(seq, 10.0, OutDims{0, 4}), std::invalid_argument);
}

TEST_CASE("bilinear resize averages half-pixel neighbourhoods") {
  PlaneF in(2, 2);
  in << 0.0f, 100.0f, 200.0f, 300.0f;
  const PlaneF out = bilinear_resize(in, 1, 1);
  CHECK(out(0, 0) == doctest::Approx(150.0f));  // center of the four samples

  const PlaneF up = bilinear_resize(in, 4, 4);
  CHECK(up(0, 0) == doctest::Approx(0.0f));  // corners clamp to the originals
  CHECK(up(3, 3) == doctest::Approx(300.0f));
  CHECK(up.rows() == 4);
  CHECK(up.cols() == 4);
}

TEST_CASE("resample with resize changes dimensions after blending") {
  Rng rng(37);
  const FrameSequence seq = random_sequence(rng, 6, 12.0, 8, 8);
  const FrameSequence out = resample_fps(seq, 6.0, OutDims{4, 2});
  CHECK(out.width() == 4);
  CHECK(out.height() == 2);
  CHECK(out.frame_count() == 3);
}

TEST_CASE("split_at_switch follows the 3 s + 5 s protocol") {
  Rng rng(41);

  SUBCASE("8 s at 30 fps: 90 conditioning + 150 test frames") {
    const FrameSequence seq = random_sequence(rng, 240, 30.0, 4, 4);
    SplitSpec spec;
    spec.switch_index = 89;
    const auto [conditioning, test] = split_at_switch(seq, spec);
    CHECK(conditioning.frame_count() == 90);
    CHECK(test.frame_count() == 150);
    CHECK(conditioning.frames.back() == seq.frames[89]);  // the switch frame
    CHECK(test.frames.front() == seq.frames[90]);
  }

  SUBCASE("8 s at 8 fps: 24 + 40 frames") {
    const FrameSequence seq = random_sequence(rng, 64, 8.0, 4, 4);
    SplitSpec spec;
    spec.switch_index = 23;
    const auto [conditioning, test] = split_at_switch(seq, spec);
    CHECK(conditioning.frame_count() == 24);
    CHECK(test.frame_count() == 40);
  }

  SUBCASE("6 s at 30 fps is too short") {
    const FrameSequence seq = random_sequence(rng, 180, 30.0, 4, 4);
    SplitSpec spec;
    spec.switch_index = 89;
    CHECK_THROWS_WITH_AS(split_at_switch(seq, spec), doctest::Contains("too short"),
                         std::invalid_argument);
  }

  SUBCASE("switch index inconsistent with fps") {
    const FrameSequence seq = random_sequence(rng, 240, 30.0, 4, 4);
    SplitSpec spec;
    spec.switch_index = 50;
    CHECK_THROWS_AS(split_at_switch(seq, spec), std::invalid_argument);
  }
}

TEST_CASE("split partition reproduces the original prefix bit exact") {
  Rng rng(43);
  const FrameSequence seq = random_sequence(rng, 64, 8.0, 6, 6);
  SplitSpec spec;
  spec.switch_index = 23;
  const auto [conditioning, test] = split_at_switch(seq, spec);
  CHECK(conditioning.frame_count() + test.frame_count() <= seq.frame_count());
  for (int i = 0; i < conditioning.frame_count(); ++i) {
    CHECK(conditioning.frames[i] == seq.frames[i]);
  }
  for (int i = 0; i < test.frame_count(); ++i) {
    CHECK(test.frames[i] == seq.frames[conditioning.frame_count() + i]);
  }
}
