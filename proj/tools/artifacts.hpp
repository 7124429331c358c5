#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gply/zeros.hpp"

namespace gply::cli {

std::string sha256_file(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> parameters;  // rationals and floats kept as strings
  std::string mode = "exact";
  unsigned precision = 0;
  unsigned threads = 0;
  std::vector<std::pair<std::string, double>> timings;  // seconds
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  void add_input(const std::filesystem::path& p);
  void add_output(const std::filesystem::path& p);
  std::string to_json() const;
};

std::map<std::string, std::string> library_versions();

// zeros.csv: re_x,im_x,multiplicity,abs_x,residual
std::string zeros_to_csv(const ZeroSet& zs);
/// Roots are read at the precision of the longest mantissa in the file (at least 64 digits).
ZeroSet zeros_from_csv(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws parse_error if missing
};

CsvTable parse_csv(const std::string& text);

enum class LocusOverlay { none, unit_circle, axes, both };

LocusOverlay parse_overlay(const std::string& name);

/// Equal-aspect scatter of points with optional locus overlays.
std::string zeros_svg(const std::vector<std::pair<double, double>>& points, LocusOverlay overlay,
                      const std::string& title);

/// R against delta with a marker line at delta = 1.
std::string sweep_svg(const std::vector<std::pair<double, double>>& points, const std::string& title);

}  // namespace gply::cli
