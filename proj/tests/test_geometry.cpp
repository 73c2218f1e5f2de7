#include <set>

#include "core/error.hpp"
#include "core/geometry.hpp"
#include "doctest.h"

using namespace herc;

TEST_CASE("full-size array geometry") {
  auto g = build_array(128, 128, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
  CHECK(g.aperture_x() == doctest::Approx(32e-3).epsilon(1e-12));
  CHECK(g.aperture_y() == doctest::Approx(32e-3).epsilon(1e-12));
  CHECK(g.element_width() == doctest::Approx(220e-6).epsilon(1e-12));
  CHECK(g.wavelength() == doctest::Approx(244.444e-6).epsilon(1e-4));
}

TEST_CASE("desk array geometry") {
  auto g = build_array(32, 32, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
  CHECK(g.aperture_x() == doctest::Approx(8e-3).epsilon(1e-12));
  CHECK(g.wavelength() == doctest::Approx(244.444e-6).epsilon(1e-4));
}

TEST_CASE("2x2 lattice is centered") {
  auto g = build_array(2, 2, 1e-3, 0.0, 5e6, 40e6, 1500.0);
  std::set<std::pair<double, double>> got;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      auto p = g.element_center(r, c);
      CHECK(p.z == 0.0);
      got.insert({p.x, p.y});
    }
  }
  std::set<std::pair<double, double>> want = {
      {-0.5e-3, -0.5e-3}, {-0.5e-3, 0.5e-3}, {0.5e-3, -0.5e-3}, {0.5e-3, 0.5e-3}};
  CHECK(got == want);
}

TEST_CASE("elements of a channel share the fixed coordinate") {
  auto g = build_array(128, 128, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
  auto row0 = g.elements_of_channel(Axis::Rows, 0);
  REQUIRE(row0.size() == 128);
  for (const auto& p : row0) CHECK(p.y == row0.front().y);
  auto col64 = g.elements_of_channel(Axis::Columns, 64);
  REQUIRE(col64.size() == 128);
  for (const auto& p : col64) CHECK(p.x == col64.front().x);

  auto g2 = build_array(2, 2, 1e-3, 0.0, 5e6, 40e6, 1500.0);
  auto row1 = g2.elements_of_channel(Axis::Rows, 1);
  REQUIRE(row1.size() == 2);
  CHECK(row1[0].x == doctest::Approx(-0.5e-3));
  CHECK(row1[0].y == doctest::Approx(0.5e-3));
  CHECK(row1[1].x == doctest::Approx(0.5e-3));
  CHECK(row1[1].y == doctest::Approx(0.5e-3));
}

TEST_CASE("rows and columns tile the lattice and cross in single elements") {
  auto g = build_array(3, 5, 200e-6, 20e-6, 5e6, 40e6, 1540.0);
  std::set<std::pair<double, double>> row_union, col_union;
  for (int r = 0; r < g.n_rows; ++r) {
    for (const auto& p : g.elements_of_channel(Axis::Rows, r)) row_union.insert({p.x, p.y});
  }
  for (int c = 0; c < g.n_cols; ++c) {
    for (const auto& p : g.elements_of_channel(Axis::Columns, c)) col_union.insert({p.x, p.y});
  }
  CHECK(row_union.size() == 15);
  CHECK(row_union == col_union);

  // row r and column c intersect in exactly element (r, c)
  for (int r = 0; r < g.n_rows; ++r) {
    for (int c = 0; c < g.n_cols; ++c) {
      auto row = g.elements_of_channel(Axis::Rows, r);
      auto col = g.elements_of_channel(Axis::Columns, c);
      int shared = 0;
      for (const auto& a : row) {
        for (const auto& b : col) {
          if (a.x == b.x && a.y == b.y) ++shared;
        }
      }
      CHECK(shared == 1);
      auto e = g.element_center(r, c);
      CHECK(e.x == g.channel_position(Axis::Columns, c));
      CHECK(e.y == g.channel_position(Axis::Rows, r));
    }
  }
}

TEST_CASE("lattice is invariant under axis swap plus x/y reflection") {
  auto g = build_array(3, 5, 200e-6, 20e-6, 5e6, 40e6, 1540.0);
  auto t = build_array(5, 3, 200e-6, 20e-6, 5e6, 40e6, 1540.0);
  for (int r = 0; r < g.n_rows; ++r) {
    for (int c = 0; c < g.n_cols; ++c) {
      auto a = g.element_center(r, c);
      auto b = t.element_center(c, r);
      CHECK(a.x == b.y);
      CHECK(a.y == b.x);
    }
  }
}

TEST_CASE("geometry validation names the offending field") {
  CHECK_THROWS_WITH_AS(build_array(32, 32, 250e-6, 250e-6, 6.3e6, 50e6, 1540.0),
                       doctest::Contains("kerf"), Error);
  CHECK_THROWS_WITH_AS(build_array(1, 32, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0),
                       doctest::Contains("n_rows"), Error);
  CHECK_THROWS_WITH_AS(build_array(32, 32, 0.0, 0.0, 6.3e6, 50e6, 1540.0),
                       doctest::Contains("pitch"), Error);
  auto g = build_array(4, 4, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
  CHECK_THROWS_AS((void)g.elements_of_channel(Axis::Rows, 4), Error);
  CHECK_THROWS_AS((void)g.elements_of_channel(Axis::Columns, -1), Error);
}
