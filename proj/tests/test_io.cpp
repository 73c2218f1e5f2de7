#include <filesystem>
#include <fstream>

#include "core/config.hpp"
#include "core/containers.hpp"
#include "core/error.hpp"
#include "core/experiment.hpp"
#include "core/rng.hpp"
#include "core/scene.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace herc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void truncate_file(const std::string& path, std::size_t keep) {
  auto bytes = slurp(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(std::min(keep, bytes.size())));
}

}  // namespace

TEST_CASE("volume containers round-trip bit-exactly") {
  auto dir = tst::scratch_dir("vol_roundtrip");
  GridSpec g;
  g.origin = {-1e-3, -2e-3, 5e-3};
  g.spacing = {0.1e-3, 0.2e-3, 0.05e-3};
  g.counts = {7, 5, 9};

  SUBCASE("real volume") {
    RealVolume v(g);
    Rng rng(1);
    for (auto& x : v.values) x = rng.uniform(-80.0, 0.0);
    auto p1 = dir + "/a.vol";
    auto p2 = dir + "/b.vol";
    write_volume(v, p1);
    auto back = read_volume(p1);
    REQUIRE(!back.complex_values);
    CHECK(back.real.grid.same_as(g));
    write_volume(back.real, p2);
    CHECK(slurp(p1) == slurp(p2));
  }
  SUBCASE("complex volume") {
    VolumeGrid v(g);
    Rng rng(2);
    for (auto& x : v.values) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    auto p1 = dir + "/c.vol";
    auto p2 = dir + "/d.vol";
    write_volume(v, p1);
    auto back = read_volume(p1);
    REQUIRE(back.complex_values);
    write_volume(back.cplx, p2);
    CHECK(slurp(p1) == slurp(p2));
  }
}

TEST_CASE("channel-data container round-trips bit-exactly") {
  auto dir = tst::scratch_dir("rf_roundtrip");
  ChannelData d;
  d.domain = ChannelData::Domain::EncodedChannels;
  d.scheme = SchemeKind::HerculesDiverging;
  d.tx_axis = Axis::Columns;
  d.n_events = 4;
  d.fs = 50e6;
  d.t0 = 0.0;
  d.real_samples = Cube<double>(4, 3, 17);
  Rng rng(3);
  for (auto& x : d.real_samples.data) x = rng.uniform(-1, 1);
  auto p1 = dir + "/a.rf";
  auto p2 = dir + "/b.rf";
  write_channel_data(d, p1);
  auto back = read_channel_data(p1);
  CHECK(back.scheme == d.scheme);
  CHECK(back.tx_axis == d.tx_axis);
  CHECK(back.n_events == 4);
  CHECK(back.fs == d.fs);
  write_channel_data(back, p2);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("corrupt containers are reported") {
  auto dir = tst::scratch_dir("corrupt");
  GridSpec g;
  g.origin = {0, 0, 1e-3};
  g.spacing = {1e-4, 1e-4, 1e-4};
  g.counts = {4, 4, 4};
  RealVolume v(g);
  auto vol_path = dir + "/x.vol";
  write_volume(v, vol_path);

  SUBCASE("truncation") {
    truncate_file(vol_path, 100);
    CHECK_THROWS_WITH_AS((void)read_volume(vol_path), doctest::Contains("truncated"), Error);
  }
  SUBCASE("magic mismatch") {
    CHECK_THROWS_WITH_AS((void)read_channel_data(vol_path), doctest::Contains("magic"), Error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS((void)read_volume(dir + "/nope.vol"), Error);
  }
}

TEST_CASE("scene files parse and validate") {
  auto dir = tst::scratch_dir("scene");
  auto path = dir + "/pts.scene";
  write_text_file("# comment\n0 0 10e-3 1.0\n1e-3 -2e-3 12e-3 0.5  # trailing\n\n", path);
  auto scene = load_scene(path, 1540.0);
  REQUIRE(scene.scatterers.size() == 2);
  CHECK(scene.scatterers[1].position.x == doctest::Approx(1e-3));
  CHECK(scene.scatterers[1].reflectivity == doctest::Approx(0.5));
  CHECK(scene.speed_of_sound == 1540.0);

  Scene out;
  out.speed_of_sound = 1540.0;
  out.scatterers = scene.scatterers;
  auto path2 = dir + "/copy.scene";
  save_scene(out, path2);
  auto again = load_scene(path2, 1540.0);
  CHECK(again.scatterers.size() == 2);
  CHECK(again.scatterers[0].position.z == doctest::Approx(10e-3));

  write_text_file("0 0 10e-3\n", dir + "/bad.scene");
  CHECK_THROWS_WITH_AS((void)load_scene(dir + "/bad.scene", 1540.0),
                       doctest::Contains("expected 'x y z reflectivity'"), Error);
  write_text_file("0 0 -1e-3 1\n", dir + "/behind.scene");
  CHECK_THROWS_WITH_AS((void)load_scene(dir + "/behind.scene", 1540.0),
                       doctest::Contains("behind"), Error);
}

namespace {

std::string write_minimal_config(const std::string& dir, const std::string& scheme_line,
                                 const std::string& extra = {}) {
  write_text_file("0 0 6e-3 1.0\n", dir + "/pt.scene");
  std::string text =
      "[geometry]\n"
      "rows = 4\ncols = 4\npitch = 250 um\nkerf = 30 um\n"
      "center_frequency = 6.3 MHz\nsampling_frequency = 50 MHz\nspeed_of_sound = 1540 m/s\n"
      "[scheme]\n" +
      scheme_line +
      "\ntransmit_axis = columns\n"
      "[excitation]\nkind = gated_sine\ncycles = 1\n"
      "[scene]\nfile = pt.scene\n"
      "[grid]\ncenter_x = 0 mm\ncenter_y = 0 mm\ncenter_z = 6 mm\n"
      "half_span_lateral = 2 wl\nhalf_span_elevational = 2 wl\nhalf_span_axial = 1 wl\n"
      "voxel_lateral = 0.5 wl\nvoxel_elevational = 0.5 wl\nvoxel_axial = 0.25 wl\n"
      "[output]\ndirectory = out\n" +
      extra;
  auto path = dir + "/exp.cfg";
  write_text_file(text, path);
  return path;
}

}  // namespace

TEST_CASE("config parsing with explicit units") {
  auto dir = tst::scratch_dir("config");
  auto path = write_minimal_config(dir, "kinds = hercules_plane, vls\nn_events = 4",
                                   "[run]\nseed = 77\nthreads = 2\n");
  auto cfg = load_config(path);
  CHECK(cfg.geometry.n_rows == 4);
  CHECK(cfg.geometry.pitch == doctest::Approx(250e-6));
  CHECK(cfg.geometry.center_frequency == doctest::Approx(6.3e6));
  REQUIRE(cfg.schemes.size() == 2);
  CHECK(cfg.schemes[0].kind == SchemeKind::HerculesPlane);
  CHECK(cfg.schemes[1].kind == SchemeKind::WalkingVls);
  CHECK(cfg.seed == 77);
  CHECK(cfg.threads == 2);
  double wl = cfg.geometry.wavelength();
  CHECK(cfg.grid.counts[0] == 2 * 4 + 1);  // 2 wl at half-wl voxels
  CHECK(cfg.grid.spacing.x == doctest::Approx(wl / 2));
  CHECK(std::isinf(cfg.snr_db));
  CHECK(fs::path(cfg.scene_path).is_absolute());
  CHECK(cfg.output_dir == (fs::path(dir) / "out").string());
}

TEST_CASE("config rejections carry field-level messages") {
  auto dir = tst::scratch_dir("config_bad");

  SUBCASE("unsupported HERO order") {
    auto path = write_minimal_config(dir, "kinds = hercules_plane\nn_events = 100");
    CHECK_THROWS_WITH_AS((void)load_config(path), doctest::Contains("one event per biased"),
                         Error);
  }
  SUBCASE("unknown key") {
    auto path = write_minimal_config(dir, "kinds = vls\nn_events = 4\nbogus_key = 3");
    CHECK_THROWS_WITH_AS((void)load_config(path), doctest::Contains("bogus_key"), Error);
  }
  SUBCASE("missing unit") {
    auto path = write_minimal_config(dir, "kinds = vls\nn_events = 4",
                                     "[run]\nseed = 1\n[beamform]\nrx_fnumber_line = 1\n");
    CHECK_NOTHROW((void)load_config(path));  // f-numbers are dimensionless
    auto bad = dir + "/bad_unit.cfg";
    write_text_file(slurp(path) + "\n", bad);
    // pitch without a unit must be rejected
    auto text = slurp(path);
    auto pos = text.find("pitch = 250 um");
    text.replace(pos, 14, "pitch = 250e-6");
    write_text_file(text, bad);
    CHECK_THROWS_WITH_AS((void)load_config(bad), doctest::Contains("unit"), Error);
  }
  SUBCASE("missing scene file") {
    auto path = write_minimal_config(dir, "kinds = vls\nn_events = 4");
    fs::remove(dir + "/pt.scene");
    CHECK_THROWS_WITH_AS((void)load_config(path), doctest::Contains("does not exist"), Error);
  }
  SUBCASE("duplicate scheme") {
    auto path = write_minimal_config(dir, "kinds = vls, vls\nn_events = 4");
    CHECK_THROWS_WITH_AS((void)load_config(path), doctest::Contains("twice"), Error);
  }
}

TEST_CASE("pgm slices have the documented shape and mapping") {
  GridSpec g;
  g.origin = {0, 0, 1e-3};
  g.spacing = {1e-4, 1e-4, 1e-4};
  g.counts = {3, 2, 2};
  RealVolume db(g);
  std::fill(db.values.begin(), db.values.end(), -100.0);
  db.values[g.index(1, 1, 1)] = 0.0;    // full white
  db.values[g.index(0, 1, 1)] = -30.0;  // mid gray at a 60 dB range

  auto dir = tst::scratch_dir("pgm");
  auto path = dir + "/s.pgm";
  write_db_slice_pgm(db, SlicePlane::LateralElevational, 60.0, path);
  auto bytes = slurp(path);
  CHECK(bytes.substr(0, 11) == "P5\n3 2\n255\n");
  REQUIRE(bytes.size() == 11 + 6);
  // mid z plane = iz 1; row-major rows over y
  CHECK(static_cast<unsigned char>(bytes[11 + 3 + 1]) == 255);
  CHECK(static_cast<unsigned char>(bytes[11 + 3 + 0]) == 128);
  CHECK(static_cast<unsigned char>(bytes[11 + 0]) == 0);
}

TEST_CASE("report merges metrics tables sorted by scheme") {
  auto dir = tst::scratch_dir("report");
  fs::create_directories(dir + "/vls");
  fs::create_directories(dir + "/hercules_plane");
  write_key_values({{"scheme", "vls"},
                    {"lateral_fwhm_m", "1.0e-03"},
                    {"elevational_fwhm_m", "8.0e-04"},
                    {"axial_fwhm_m", "1.3e-04"},
                    {"inner_energy_ratio", "0.2"}},
                   dir + "/vls/metrics.txt");
  write_key_values({{"scheme", "hercules_plane"},
                    {"lateral_fwhm_m", "7.0e-04"},
                    {"elevational_fwhm_m", "8.1e-04"},
                    {"axial_fwhm_m", "1.3e-04"},
                    {"inner_energy_ratio", "0.4"},
                    {"gcnr", "0.77"}},
                   dir + "/hercules_plane/metrics.txt");
  auto table = write_report(dir);
  CHECK(slurp(dir + "/report.txt") == table);
  auto plane_at = table.find("hercules_plane");
  auto vls_at = table.find("vls");
  REQUIRE(plane_at != std::string::npos);
  REQUIRE(vls_at != std::string::npos);
  CHECK(plane_at < vls_at);
  CHECK(table.find("700.0") != std::string::npos);
  CHECK(table.find("0.77") != std::string::npos);
  CHECK(table.find("1000.0") != std::string::npos);
}
