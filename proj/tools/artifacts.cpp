#include "artifacts.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <gmp.h>
#include <json.hpp>
#include <mpfr.h>
#include <sstream>

#include "gply/error.hpp"
#include "gply/mp.hpp"

#ifndef GPLY_VERSION
#define GPLY_VERSION "0.0.0"
#endif

namespace gply::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path.string() + "'");
  out << text;
}

std::string sha256_file(const fs::path& path) {
  std::string data = read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::invalid_argument, "sha256 failed for '" + path.string() + "'");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

void RunManifest::add_input(const fs::path& p) { inputs.push_back({p.string(), sha256_file(p)}); }
void RunManifest::add_output(const fs::path& p) { outputs.push_back({p.string(), sha256_file(p)}); }

std::map<std::string, std::string> library_versions() {
  return {{"gply", GPLY_VERSION},
          {"gmp", gmp_version},
          {"mpfr", mpfr_get_version()},
          {"boost", BOOST_LIB_VERSION}};
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["argv"] = argv;
  j["parameters"] = parameters;
  j["mode"] = mode;
  j["precision"] = precision;
  j["threads"] = threads;
  j["versions"] = library_versions();
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto& [k, v] : timings) t[k] = v;
  j["timings"] = t;
  auto files = [](const std::vector<FileDigest>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& f : v) a.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return a;
  };
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  return j.dump(2) + "\n";
}

namespace {

std::string sci(const mp::Real& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << v;
  return os.str();
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    cell.erase(std::remove_if(cell.begin(), cell.end(), [](unsigned char c) { return std::isspace(c); }),
               cell.end());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::size_t mantissa_digits(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (std::isdigit(static_cast<unsigned char>(c))) ++n;
  }
  return n;
}

}  // namespace

std::string zeros_to_csv(const ZeroSet& zs) {
  mp::ScopedPrecision prec(std::max(zs.digits, 16u));
  const int d = static_cast<int>(std::max(zs.digits, 16u));
  std::string out = "re_x,im_x,multiplicity,abs_x,residual\n";
  for (const auto& e : zs.entries) {
    out += sci(e.root.real(), d - 1) + "," + sci(e.root.imag(), d - 1) + "," + std::to_string(e.multiplicity) +
           "," + sci(abs(e.root), 19) + "," + sci(e.residual, 5) + "\n";
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(ErrorCode::parse_error, "CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                              std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw Error(ErrorCode::parse_error, "empty CSV");
  return t;
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::parse_error, "CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

ZeroSet zeros_from_csv(const std::string& text) {
  CsvTable t = parse_csv(text);
  const std::size_t cr = t.column("re_x"), ci = t.column("im_x"), cm = t.column("multiplicity");
  std::size_t digits = 64;
  for (const auto& r : t.rows) digits = std::max({digits, mantissa_digits(r[cr]), mantissa_digits(r[ci])});
  ZeroSet zs;
  zs.digits = static_cast<unsigned>(digits);
  zs.valid = true;
  mp::ScopedPrecision prec(zs.digits);
  std::size_t cres = std::find(t.header.begin(), t.header.end(), "residual") - t.header.begin();
  for (const auto& r : t.rows) {
    ZeroEntry e;
    try {
      e.root = mp::Complex(mp::Real(r[cr]), mp::Real(r[ci]));
      long m = std::stol(r[cm]);
      if (m < 1) throw std::invalid_argument("multiplicity");
      e.multiplicity = static_cast<unsigned>(m);
      if (cres < r.size() && !r[cres].empty()) e.residual = mp::Real(r[cres]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "malformed zeros row '" + r[cr] + "," + r[ci] + "," + r[cm] + "'");
    }
    zs.degree += static_cast<int>(e.multiplicity);
    zs.entries.push_back(std::move(e));
  }
  return zs;
}

LocusOverlay parse_overlay(const std::string& name) {
  if (name == "none") return LocusOverlay::none;
  if (name == "unit-circle" || name == "circle") return LocusOverlay::unit_circle;
  if (name == "axes") return LocusOverlay::axes;
  if (name == "both") return LocusOverlay::both;
  throw Error(ErrorCode::invalid_argument, "unknown locus overlay '" + name + "' (none, unit-circle, axes, both)");
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out.push_back(c);
  }
  return out;
}

}  // namespace

std::string zeros_svg(const std::vector<std::pair<double, double>>& points, LocusOverlay overlay,
                      const std::string& title) {
  const double size = 600, margin = 40, half = (size - 2 * margin) / 2, cx = size / 2, cy = size / 2;
  double bound = overlay == LocusOverlay::none ? 0 : 1.2;
  for (const auto& [x, y] : points)
    if (std::isfinite(x) && std::isfinite(y)) bound = std::max({bound, std::abs(x) * 1.05, std::abs(y) * 1.05});
  if (bound == 0) bound = 1;
  const double s = half / bound;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\"" << num(size)
     << "\" viewBox=\"0 0 " << num(size) << " " << num(size) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(cx) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(2 * half) << "\" height=\""
     << num(2 * half) << "\" fill=\"none\" stroke=\"#999\"/>\n";
  if (overlay == LocusOverlay::axes || overlay == LocusOverlay::both) {
    os << "<line class=\"locus-axes\" x1=\"" << num(margin) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(size - margin)
       << "\" y2=\"" << num(cy) << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
    os << "<line class=\"locus-axes\" x1=\"" << num(cx) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(cx)
       << "\" y2=\"" << num(size - margin) << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
  }
  if (overlay == LocusOverlay::unit_circle || overlay == LocusOverlay::both)
    os << "<circle class=\"locus-circle\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(s)
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    os << "<circle class=\"zero\" cx=\"" << num(cx + x * s) << "\" cy=\"" << num(cy - y * s)
       << "\" r=\"2\" fill=\"black\"/>\n";
  }
  os << "<text x=\"" << num(size - margin) << "\" y=\"" << num(size - 12)
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">|Re|,|Im| &lt;= " << num(bound)
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string sweep_svg(const std::vector<std::pair<double, double>>& points, const std::string& title) {
  const double w = 640, h = 420, ml = 60, mr = 20, mt = 40, mb = 50;
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& [d, r] : points) {
    if (!std::isfinite(d)) continue;
    lo = first ? d : std::min(lo, d);
    hi = first ? d : std::max(hi, d);
    first = false;
  }
  if (first || hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  auto px = [&](double d) { return ml + (d - lo) / (hi - lo) * (w - ml - mr); };
  auto py = [&](double r) { return h - mb - r * (h - mt - mb); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(w - ml - mr) << "\" height=\""
     << num(h - mt - mb) << "\" fill=\"none\" stroke=\"#999\"/>\n";
  if (lo < 1 && hi > 1)
    os << "<line class=\"transition\" x1=\"" << num(px(1)) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(px(1))
       << "\" y2=\"" << num(h - mb) << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
  std::string path;
  for (const auto& [d, r] : points) {
    if (!std::isfinite(d) || !std::isfinite(r)) continue;
    path += (path.empty() ? "" : " ") + num(px(d)) + "," + num(py(r));
  }
  if (!path.empty())
    os << "<polyline points=\"" << path << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  for (const auto& [d, r] : points) {
    if (!std::isfinite(d) || !std::isfinite(r)) continue;
    os << "<circle class=\"point\" cx=\"" << num(px(d)) << "\" cy=\"" << num(py(r))
       << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  auto label = [&](double x, double y, const std::string& s, const char* anchor) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s) << "</text>\n";
  };
  label(ml, h - mb + 16, num(lo), "middle");
  label(w - mr, h - mb + 16, num(hi), "middle");
  label(w / 2, h - 12, "Delta", "middle");
  label(ml - 6, py(0) + 4, "0", "end");
  label(ml - 6, py(1) + 4, "1", "end");
  label(16, h / 2, "R", "middle");
  os << "</svg>\n";
  return os.str();
}

}  // namespace gply::cli
