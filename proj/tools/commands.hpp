#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "gply/amplitude.hpp"
#include "gply/circuit.hpp"

namespace gply::cli {

/// Bad flag values or combinations; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string out = ".";
  unsigned threads = 0;
  unsigned digits = 0;  // 0: GPLY_PRECISION or 128
  std::string mode = "exact";
};

struct StateOptions {
  std::string state = "dw";
  int m = -1;
  int L = 8;
  std::string q = "2";
  unsigned n = 10;
  std::string projection = "zero-momentum";
};

struct AmplitudeOptions {
  StateOptions s;
  std::string x0;
};

struct ZerosOptions {
  StateOptions s;
  std::string in;
  unsigned digits = 0;  // 0: 64 up to degree 1000, 256 above
  bool no_modular = false;
};

struct DiagnosticOptions {
  StateOptions s;
  std::vector<std::string> in;
  std::vector<unsigned> in_n;
  std::string eps = "1e-2";
  std::string eps_grid;
  std::string locus = "auto";
  bool scan = false;
  std::string grid = "polar";
  double lo = 0.8;
  double hi = 1.2;
  unsigned n_radial = 9;
  unsigned n_angular = 24;
  double tolerance = 1e-6;
};

struct SweepOptions {
  StateOptions s;
  std::string delta = "0.6:1.4:17";
  double eps = 1e-2;
  unsigned max_den = 50;
};

struct BetheOptions {
  std::string q = "2";
  int L = 4;
  int m = 1;
  std::string x0 = "1/2+1/3i";
};

struct StaggeredOptions {
  std::string a;
  std::string b;
  std::string x;  // brickwork slice when set
  std::string q = "2";
  int L = 4;
  int m = 2;
  std::string arrangement = "alternating";
  std::string state;
  unsigned n = 5;
};

struct PlotOptions {
  std::string in;
  std::string locus = "both";
  std::string title;
  std::string output = "plot.svg";
};

/// Each command writes its artifacts under g.out and records them in the manifest.
void run_amplitude(const GlobalOptions& g, const AmplitudeOptions& o, RunManifest& m);
void run_zeros(const GlobalOptions& g, const ZerosOptions& o, RunManifest& m);
void run_diagnostic(const GlobalOptions& g, const DiagnosticOptions& o, RunManifest& m);
void run_sweep(const GlobalOptions& g, const SweepOptions& o, RunManifest& m);
void run_bethe(const GlobalOptions& g, const BetheOptions& o, RunManifest& m);
void run_staggered(const GlobalOptions& g, const StaggeredOptions& o, RunManifest& m);
void run_plot(const GlobalOptions& g, const PlotOptions& o, RunManifest& m);

Mode parse_mode(const std::string& s);
/// Exact mode rejects decimals and q outside the massive and massless families.
CircuitParams make_params(const std::string& q, Mode mode, int L, int M);
mp::Complex parse_complex(const std::string& text);
std::vector<double> parse_range(const std::string& spec);

}  // namespace gply::cli
