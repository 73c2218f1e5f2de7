#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace herc {

double fwhm(std::span<const double> profile, double spacing) {
  if (profile.size() < 3) throw Error::validation("fwhm: profile too short");
  std::size_t peak = 0;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i] > profile[peak]) peak = i;
  }
  if (peak == 0 || peak + 1 == profile.size()) {
    throw Error::validation("fwhm: peak at the profile boundary; widen the measurement window");
  }
  const double half = profile[peak] / 2.0;

  // walk outward to the first crossing on each side
  std::size_t lo = peak;
  while (lo > 0 && profile[lo] > half) --lo;
  if (profile[lo] > half) throw Error::validation("fwhm: no half-maximum crossing left of peak");
  double left = static_cast<double>(lo) + (half - profile[lo]) / (profile[lo + 1] - profile[lo]);

  std::size_t hi = peak;
  while (hi + 1 < profile.size() && profile[hi] > half) ++hi;
  if (profile[hi] > half) throw Error::validation("fwhm: no half-maximum crossing right of peak");
  double right =
      static_cast<double>(hi) - (half - profile[hi]) / (profile[hi - 1] - profile[hi]);

  return (right - left) * spacing;
}

InnerEnergy inner_energy_ratio(const RealVolume& env, const Vec3& center, double wavelength) {
  const auto& g = env.grid;
  const double radius = 2.5 * wavelength;
  const double margin = 5.0 * wavelength;
  const double eps = 1e-9 * wavelength;

  Vec3 lo = g.origin;
  Vec3 hi = g.position(g.counts[0] - 1, g.counts[1] - 1, g.counts[2] - 1);
  bool inside = center.x >= lo.x && center.x <= hi.x && center.y >= lo.y && center.y <= hi.y &&
                center.z >= lo.z && center.z <= hi.z;
  if (!inside) throw Error::validation("inner_energy_ratio: center is outside the volume");
  if (center.x - lo.x + eps < margin || hi.x - center.x + eps < margin ||
      center.y - lo.y + eps < margin || hi.y - center.y + eps < margin ||
      center.z - lo.z + eps < margin || hi.z - center.z + eps < margin) {
    throw Error::validation(
        "inner_energy_ratio: volume must extend at least 5 wavelengths beyond the center on "
        "every axis");
  }

  const double r2 = radius * radius;
  double e_in = 0.0;
  double e_out = 0.0;
  std::size_t i = 0;
  for (int iz = 0; iz < g.counts[2]; ++iz) {
    for (int iy = 0; iy < g.counts[1]; ++iy) {
      for (int ix = 0; ix < g.counts[0]; ++ix, ++i) {
        Vec3 v = g.position(ix, iy, iz);
        double d2 = (v.x - center.x) * (v.x - center.x) + (v.y - center.y) * (v.y - center.y) +
                    (v.z - center.z) * (v.z - center.z);
        double e = env.values[i] * env.values[i];
        if (d2 <= r2) {
          e_in += e;
        } else {
          e_out += e;
        }
      }
    }
  }
  double total = e_in + e_out;
  InnerEnergy out;
  out.ratio = total > 0.0 ? e_in / total : 0.0;
  out.quotient = e_out > 0.0 ? e_in / e_out : std::numeric_limits<double>::infinity();
  return out;
}

double gcnr(std::span<const double> inside, std::span<const double> outside, int n_bins) {
  if (inside.empty() || outside.empty()) throw Error::validation("gcnr: empty sample set");
  if (n_bins < 1) throw Error::validation("gcnr: need at least one bin");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : inside) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : outside) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return 0.0;  // all samples identical: full overlap

  std::vector<double> h_in(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> h_out(static_cast<std::size_t>(n_bins), 0.0);
  const double scale = static_cast<double>(n_bins) / (hi - lo);
  auto bin_of = [&](double v) {
    auto b = static_cast<long>((v - lo) * scale);
    if (b < 0) b = 0;
    if (b >= n_bins) b = n_bins - 1;
    return static_cast<std::size_t>(b);
  };
  for (double v : inside) h_in[bin_of(v)] += 1.0;
  for (double v : outside) h_out[bin_of(v)] += 1.0;

  double overlap = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    overlap += std::min(h_in[static_cast<std::size_t>(b)] / static_cast<double>(inside.size()),
                        h_out[static_cast<std::size_t>(b)] / static_cast<double>(outside.size()));
  }
  return 1.0 - overlap;
}

RegionSamples extract_region_samples(const RealVolume& env, const CylinderRegionPair& r) {
  if (!(r.inner_radius > 0.0) || r.guard_radius < r.inner_radius ||
      !(r.outer_radius > r.guard_radius)) {
    throw Error::validation("regions: need 0 < inner <= guard < outer radii");
  }
  if (!(r.length > 0.0)) throw Error::validation("regions: cylinder length must be positive");
  double an = std::sqrt(r.axis.x * r.axis.x + r.axis.y * r.axis.y + r.axis.z * r.axis.z);
  if (!(an > 0.0)) throw Error::validation("regions: zero axis vector");
  Vec3 axis{r.axis.x / an, r.axis.y / an, r.axis.z / an};

  RegionSamples out;
  const auto& g = env.grid;
  std::size_t i = 0;
  for (int iz = 0; iz < g.counts[2]; ++iz) {
    for (int iy = 0; iy < g.counts[1]; ++iy) {
      for (int ix = 0; ix < g.counts[0]; ++ix, ++i) {
        Vec3 d = g.position(ix, iy, iz) - r.center;
        double along = d.x * axis.x + d.y * axis.y + d.z * axis.z;
        if (std::abs(along) > r.length / 2.0) continue;
        Vec3 radial = d - axis * along;
        double rd = radial.norm();
        if (rd <= r.inner_radius) {
          out.inside.push_back(env.values[i]);
        } else if (rd > r.guard_radius && rd <= r.outer_radius) {
          out.outside.push_back(env.values[i]);
        }
      }
    }
  }
  if (out.inside.empty() && out.outside.empty()) {
    throw Error::validation("regions: the cylinder pair does not intersect the grid");
  }
  return out;
}

PsfReport measure_psf(const RealVolume& env, double wavelength) {
  const auto& g = env.grid;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < env.values.size(); ++i) {
    if (env.values[i] > env.values[peak]) peak = i;
  }
  int ix = static_cast<int>(peak % g.counts[0]);
  int iy = static_cast<int>((peak / g.counts[0]) % g.counts[1]);
  int iz = static_cast<int>(peak / (static_cast<std::size_t>(g.counts[0]) * g.counts[1]));

  std::vector<double> profile;
  PsfReport rep;
  rep.peak_voxel = {ix, iy, iz};
  rep.peak_position = g.position(ix, iy, iz);
  rep.peak_envelope = env.values[peak];

  profile.resize(static_cast<std::size_t>(g.counts[0]));
  for (int i = 0; i < g.counts[0]; ++i) profile[static_cast<std::size_t>(i)] = env.values[g.index(i, iy, iz)];
  rep.lateral_fwhm = fwhm(profile, g.spacing.x);

  profile.resize(static_cast<std::size_t>(g.counts[1]));
  for (int i = 0; i < g.counts[1]; ++i) profile[static_cast<std::size_t>(i)] = env.values[g.index(ix, i, iz)];
  rep.elevational_fwhm = fwhm(profile, g.spacing.y);

  profile.resize(static_cast<std::size_t>(g.counts[2]));
  for (int i = 0; i < g.counts[2]; ++i) profile[static_cast<std::size_t>(i)] = env.values[g.index(ix, iy, i)];
  rep.axial_fwhm = fwhm(profile, g.spacing.z);

  auto ie = inner_energy_ratio(env, rep.peak_position, wavelength);
  rep.inner_energy_ratio = ie.ratio;
  rep.inner_outer_quotient = ie.quotient;
  return rep;
}

}  // namespace herc
