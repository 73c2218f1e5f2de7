#include <cmath>
#include <complex>

#include "core/beamform.hpp"
#include "core/error.hpp"
#include "core/excitation.hpp"
#include "core/scheme.hpp"
#include "doctest.h"

using namespace herc;

TEST_CASE("gated sine covers one period at unit amplitude") {
  auto e = gated_sine(6.3e6, 1.0, 50e6);
  CHECK(e.samples.size() == 8);  // round(50/6.3)
  double peak = 0.0;
  for (double v : e.samples) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.samples[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.duration == doctest::Approx(1.0 / 6.3e6));
}

TEST_CASE("zero-bandwidth chirp degenerates to a gated sine cycle") {
  double fc = 6.3e6, fs = 50e6;
  auto sine = gated_sine(fc, 1.0, fs);
  auto chirp = linear_chirp(fc, fc, 1.0 / fc, fs, 0.0);
  REQUIRE(chirp.samples.size() == sine.samples.size());
  for (std::size_t i = 0; i < sine.samples.size(); ++i) {
    CHECK(chirp.samples[i] == doctest::Approx(sine.samples[i]).epsilon(1e-12));
  }
}

TEST_CASE("linear chirp sweeps through the band midpoint") {
  auto e = linear_chirp(4e6, 8e6, 30e-6, 50e6);
  CHECK(e.samples.size() == 1500);
  // instantaneous frequency at the midpoint from the analytic-signal phase
  Cube<double> tr(1, 1, e.samples.size());
  for (std::size_t i = 0; i < e.samples.size(); ++i) tr.at(0, 0, i) = e.samples[i];
  auto z = analytic_signal(tr, 1);
  std::size_t mid = e.samples.size() / 2;
  auto dphi = std::arg(z.at(0, 0, mid + 1) * std::conj(z.at(0, 0, mid - 1)));
  double f_inst = dphi / (2.0 * 2.0 * 3.14159265358979323846 / 50e6);
  CHECK(f_inst == doctest::Approx(6e6).epsilon(0.01));
}

TEST_CASE("chirp taper ramps both ends") {
  auto e = linear_chirp(4e6, 8e6, 30e-6, 50e6, 0.2);
  // the first and last samples sit inside the cosine ramp
  CHECK(std::abs(e.samples.front()) < 0.05);
  CHECK(std::abs(e.samples.back()) < 0.05);
}

TEST_CASE("excitations reject Nyquist violations") {
  CHECK_THROWS_WITH_AS(gated_sine(30e6, 1.0, 50e6), doctest::Contains("Nyquist"), Error);
  CHECK_THROWS_AS(linear_chirp(4e6, 25e6, 10e-6, 50e6), Error);
  CHECK_THROWS_AS(linear_chirp(0.0, 8e6, 10e-6, 50e6), Error);
}

namespace {
ArrayGeometry table1_geom(int n = 128) {
  return build_array(n, n, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
}
}  // namespace

TEST_CASE("plane HERO event has zero delays and Hadamard drives") {
  auto geom = table1_geom(8);
  TransmitScheme s;
  s.kind = SchemeKind::HerculesPlane;
  s.tx_axis = Axis::Columns;
  s.n_events = 8;
  auto sched = BiasSchedule::from_order(8);
  for (int e : {0, 3, 7}) {
    auto setup = tx_channel_setup(s, geom, &sched, e);
    for (int ch = 0; ch < 8; ++ch) {
      CHECK(setup.delays[static_cast<std::size_t>(ch)] == 0.0);
      CHECK(setup.drive[static_cast<std::size_t>(ch)] == sched.sign(e, ch));
      CHECK(setup.bias[static_cast<std::size_t>(ch)] == sched.sign(e, ch));
      CHECK(setup.active[static_cast<std::size_t>(ch)] == 1);
    }
  }
}

TEST_CASE("diverging wavefront geometry at 45 degrees") {
  auto geom = table1_geom(128);  // 32 mm aperture
  TransmitScheme s;
  s.kind = SchemeKind::HerculesDiverging;
  s.tx_axis = Axis::Columns;
  s.n_events = 128;
  s.diverging_angle_deg = 45.0;
  auto w = tx_wavefront(s, geom, 0);
  CHECK(w.standoff == doctest::Approx(16e-3).epsilon(1e-12));
  // arrival at the aperture edge: (sqrt(16^2+16^2)-16)mm / c = 4.30 us
  double edge = w.tx_delay({16e-3, 0.0, 0.0}, geom.speed_of_sound);
  CHECK(edge == doctest::Approx(4.3035e-6).epsilon(1e-4));

  auto sched = BiasSchedule::from_order(128);
  auto setup = tx_channel_setup(s, geom, &sched, 5);
  for (int ch = 0; ch < 128; ++ch) {
    double u = geom.channel_position(Axis::Columns, ch);
    CHECK(setup.delays[static_cast<std::size_t>(ch)] ==
          doctest::Approx(w.tx_delay({u, 0.0, 0.0}, geom.speed_of_sound)).epsilon(1e-12));
  }
}

TEST_CASE("zero-tilt TPW equals the plane wavefront with all-plus drives") {
  auto geom = table1_geom(8);
  TransmitScheme s;
  s.kind = SchemeKind::TiltedPlaneWave;
  s.tx_axis = Axis::Columns;
  s.n_events = 3;  // odd count puts the middle event at exactly zero tilt
  s.tpw_split_axes = false;
  auto setup = tx_channel_setup(s, geom, nullptr, 1);
  for (int ch = 0; ch < 8; ++ch) {
    CHECK(setup.delays[static_cast<std::size_t>(ch)] == doctest::Approx(0.0).epsilon(1e-18));
    CHECK(setup.drive[static_cast<std::size_t>(ch)] == 1);
  }
  auto w = tx_wavefront(s, geom, 1);
  Vec3 v{1e-3, -2e-3, 7e-3};
  CHECK(w.tx_delay(v, geom.speed_of_sound) ==
        doctest::Approx(v.z / geom.speed_of_sound).epsilon(1e-12));
}

TEST_CASE("walking VLS activates a moving sub-aperture with uniform drives") {
  auto geom = table1_geom(16);
  TransmitScheme s;
  s.kind = SchemeKind::WalkingVls;
  s.tx_axis = Axis::Columns;
  s.n_events = 16;
  s.vls_subaperture = 0.25;
  int total_active = 0;
  for (int e = 0; e < 16; ++e) {
    auto setup = tx_channel_setup(s, geom, nullptr, e);
    auto w = tx_wavefront(s, geom, e);
    int active = 0;
    for (int ch = 0; ch < 16; ++ch) {
      CHECK(setup.drive[static_cast<std::size_t>(ch)] == 1);
      CHECK(setup.bias[static_cast<std::size_t>(ch)] == 1);
      CHECK(setup.delays[static_cast<std::size_t>(ch)] >= 0.0);
      double u = geom.channel_position(Axis::Columns, ch);
      CHECK(setup.delays[static_cast<std::size_t>(ch)] ==
            doctest::Approx(w.tx_delay({u, 0.0, 0.0}, geom.speed_of_sound)).epsilon(1e-12));
      active += setup.active[static_cast<std::size_t>(ch)];
    }
    CHECK(active >= 1);
    CHECK(active <= 4 + 1);  // quarter of 16 channels, rounding at the walk edges
    total_active += active;
  }
  CHECK(total_active > 16);  // the walk really moves and overlaps
}

TEST_CASE("scheme validation") {
  auto geom = table1_geom(8);
  TransmitScheme s;
  s.kind = SchemeKind::HerculesPlane;
  s.tx_axis = Axis::Columns;
  s.n_events = 100;
  CHECK_THROWS_WITH_AS(validate_scheme(s, geom), doctest::Contains("one event per biased channel"),
                       Error);
  s.n_events = 8;
  CHECK_NOTHROW(validate_scheme(s, geom));

  TransmitScheme bad = s;
  bad.n_events = 100;
  auto g100 = build_array(100, 100, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
  CHECK_THROWS_WITH_AS(validate_scheme(bad, g100), doctest::Contains("powers of two"), Error);

  TransmitScheme tpw;
  tpw.kind = SchemeKind::TiltedPlaneWave;
  tpw.n_events = 7;
  tpw.tpw_split_axes = true;
  CHECK_THROWS_AS(validate_scheme(tpw, geom), Error);  // odd split
}
