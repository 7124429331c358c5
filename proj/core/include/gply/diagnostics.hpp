#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gply/amplitude.hpp"
#include "gply/circuit.hpp"
#include "gply/mp.hpp"
#include "gply/zeros.hpp"

namespace gply {

enum class LocusKind { unit_circle, axes, circle };

struct UniversalLocus {
  Regime regime = Regime::massive;
  LocusKind kind = LocusKind::unit_circle;
  double radius = 1;  // for circle kinds

  /// ||x| - radius| for circles, min(|Re x|, |Im x|) for the axes.
  mp::Real distance(const mp::Complex& x) const;
  std::string description() const;
};

UniversalLocus universal_locus(const GaussRat& q);
UniversalLocus universal_locus(const mp::Complex& q);
/// Circle |x| = radius, used to compare against off-locus alternatives.
UniversalLocus circle_locus(double radius);

struct DensityReport {
  double delta = 0;
  double eps = 0;
  unsigned n = 0;
  double R = 0;
  unsigned total = 0;
  unsigned within = 0;
};

DensityReport zero_density(const ZeroSet& zs, const UniversalLocus& locus, double eps, unsigned n = 0,
                           double delta = 0);

struct ScalingFit {
  double c = 0;
  double r = 0;
  double residual = 0;  // rms of log(1 - R) misfit
  std::vector<double> eps_grid;
  std::vector<std::string> notes;
  bool degenerate = false;
};

/// Least squares of log(1 - R) = log c + r log eps.
ScalingFit fit_density_scaling(const std::vector<DensityReport>& reports);

/// Geometric grid from lo to hi inclusive.
std::vector<double> eps_grid(double lo, double hi, unsigned points);

/// Gaussian-rational q with small denominators whose anisotropy is close to delta: a rational
/// q = delta + sqrt(delta^2 - 1) approximation for |delta| > 1, and a Pythagorean unimodular
/// q = ((b^2 - a^2) + 2ab i) / (a^2 + b^2) for |delta| < 1.
struct AnisotropyChoice {
  GaussRat q;
  double delta = 0;  // actual (q + 1/q)/2
  Regime regime = Regime::massive;
};

AnisotropyChoice choose_anisotropy(double delta, unsigned max_denominator = 50);

struct SweepPoint {
  double target_delta = 0;
  AnisotropyChoice choice;
  DensityReport report;
  int degree = 0;
  bool certified = false;
  double seconds = 0;
  std::string note;
};

/// R against the regime's universal locus for each delta; points at |delta| = 1 are reported
/// with a note and no density.
std::vector<SweepPoint> delta_sweep(const InitialState& state, const std::vector<double>& deltas, unsigned n,
                                    double eps, Projection projection = Projection::zero_momentum,
                                    unsigned max_denominator = 50);

struct SymmetryCheck {
  bool tested = false;
  bool pass = false;
  double max_defect = 0;
  mp::Complex worst_root;
};

struct SymmetryReport {
  SymmetryCheck z4;           // x -> i x
  SymmetryCheck conjugation;  // x -> conj(x), tested for real q
};

SymmetryReport symmetry_report(const ZeroSet& zs, const CircuitParams& params);

struct ScanGrid {
  enum class Kind { polar, cartesian } kind = Kind::polar;
  // polar: radii in [lo, hi], angles over [0, 2 pi); cartesian: square [lo, hi]^2
  double lo = 0.8;
  double hi = 1.2;
  unsigned n_radial = 9;
  unsigned n_angular = 24;

  std::vector<mp::Complex> points() const;
  /// Largest spacing between neighbouring grid points.
  double spacing() const;
};

struct ScanPoint {
  mp::Complex x;
  double gap = 0;     // relative modulus gap of the two dominant branches
  double weight = 0;  // |w| of the dominant branch
};

struct ScanOptions {
  double tolerance = 1e-6;
  unsigned digits = 128;
  std::optional<InitialState> state;
  Projection projection = Projection::none;
};

struct ScanResult {
  std::vector<ScanPoint> universal;       // equimodular dominant branches
  std::vector<ScanPoint> state_dependent;  // vanishing dominant weight
  std::vector<std::string> notes;
  std::size_t scanned = 0;
  double spacing = 0;
};

/// Scans the sector of params.M over the grid. With a state, branches it has no weight on are ignored.
ScanResult equimodular_scan(const CircuitParams& params, const ScanGrid& grid, const ScanOptions& opts = {});

}  // namespace gply
