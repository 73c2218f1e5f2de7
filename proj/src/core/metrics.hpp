#pragma once

#include <span>
#include <vector>

#include "core/beamform.hpp"
#include "core/vec3.hpp"

namespace herc {

struct PsfReport {
  double lateral_fwhm = 0.0;      // [m]
  double elevational_fwhm = 0.0;  // [m]
  double axial_fwhm = 0.0;        // [m]
  double inner_energy_ratio = 0.0;     // E_in / (E_in + E_out), sphere of 2.5 wavelengths
  double inner_outer_quotient = 0.0;   // E_in / E_out
  std::array<int, 3> peak_voxel{0, 0, 0};
  Vec3 peak_position;             // [m]
  double peak_envelope = 0.0;     // unnormalized |value| at the peak
};

// Width between the two half-maximum crossings around the unique global peak,
// crossings located by linear interpolation between bracketing samples.
double fwhm(std::span<const double> profile, double spacing);

struct InnerEnergy {
  double ratio = 0.0;     // E_in / (E_in + E_out)
  double quotient = 0.0;  // E_in / E_out
};

// Energy split of the squared envelope inside/outside a sphere of radius
// 2.5*wavelength about the center. The volume must extend at least
// 5 wavelengths beyond the center on each axis.
InnerEnergy inner_energy_ratio(const RealVolume& envelope_amplitude, const Vec3& center,
                               double wavelength);

// 1 - histogram overlap over a shared bin range; in [0, 1].
double gcnr(std::span<const double> inside, std::span<const double> outside, int n_bins = 100);

struct CylinderRegionPair {
  Vec3 center;                  // [m]
  Vec3 axis{0.0, 1.0, 0.0};     // unit vector along the cylinder axis
  double inner_radius = 0.0;    // [m]
  double guard_radius = 0.0;    // [m] transition band outer edge; >= inner
  double outer_radius = 0.0;    // [m]
  double length = 0.0;          // [m] extent along the axis
};

struct RegionSamples {
  std::vector<double> inside;
  std::vector<double> outside;
};

// Voxel envelope values split by cylindrical distance to the axis; the guard
// annulus between inner and guard radii belongs to neither set.
RegionSamples extract_region_samples(const RealVolume& envelope_amplitude,
                                     const CylinderRegionPair& regions);

// FWHM along each grid axis through the envelope peak plus the 2.5-wavelength
// inner-energy split about the peak.
PsfReport measure_psf(const RealVolume& envelope_amplitude, double wavelength);

}  // namespace herc
