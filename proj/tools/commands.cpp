#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "gply/bethe.hpp"
#include "gply/diagnostics.hpp"
#include "gply/error.hpp"
#include "gply/staggered.hpp"
#include "gply/zeros.hpp"

namespace gply::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

unsigned working_digits(const GlobalOptions& g) { return g.digits ? g.digits : mp::default_digits(); }

InitialState state_from(const StateOptions& s) {
  StateKind kind = parse_state_kind(s.state);
  return build_initial_state(kind, s.L, s.m < 0 && kind == StateKind::domain_wall ? s.L / 2 : s.m);
}

json poly_json(const DensePoly& p) { return json::parse(poly_to_json(p)); }

std::string str(const mp::Real& v, int digits = 20) { return mp::to_string(v, digits); }
std::string str(const mp::Complex& z, int digits = 20) { return mp::to_string(z, digits); }

double to_d(const mp::Real& v) { return v.convert_to<double>(); }

fs::path emit(const GlobalOptions& g, RunManifest& m, const std::string& name, const std::string& text) {
  fs::path p = fs::path(g.out) / name;
  write_file(p, text);
  m.add_output(p);
  return p;
}

std::string fixed(double v, int prec) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

UniversalLocus locus_from(const std::string& name, const CircuitParams& params) {
  if (name == "auto") return params.mode == Mode::exact ? universal_locus(params.q) : universal_locus(params.q_float);
  if (name == "unit-circle") return circle_locus(1);
  if (name == "axes") {
    UniversalLocus l;
    l.regime = Regime::massless;
    l.kind = LocusKind::axes;
    return l;
  }
  if (name.rfind("circle:", 0) == 0) return circle_locus(parse_list(name.substr(7)).at(0));
  throw UsageError("unknown locus '" + name + "' (auto, unit-circle, axes, circle:R)");
}

json roots_json(const std::vector<mp::Complex>& v, int digits = 20) {
  json a = json::array();
  for (const auto& z : v) a.push_back(str(z, digits));
  return a;
}

std::vector<int> parse_arrangement(const std::string& s, int L) {
  if (s == "alternating") return alternating_arrangement(L);
  if (s == "paired") return paired_arrangement(L);
  std::vector<int> out;
  for (double v : parse_list(s)) {
    if (v != 1 && v != 2) throw UsageError("arrangement entries must be 1 or 2");
    out.push_back(static_cast<int>(v));
  }
  if (static_cast<int>(out.size()) != L) throw UsageError("arrangement length must equal --L");
  return out;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw UsageError("unknown mode '" + s + "' (exact, float)");
}

mp::Complex parse_complex(const std::string& text) {
  try {
    return mp::to_complex(GaussRat::parse(text));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

CircuitParams make_params(const std::string& q, Mode mode, int L, int M) {
  if (mode == Mode::floating) return CircuitParams::floating(parse_complex(q), L, M);
  if (q.find_first_of(".eE") != std::string::npos)
    throw UsageError("q = '" + q + "' is not a Gaussian rational; floats need --mode float");
  GaussRat v;
  try {
    v = GaussRat::parse(q);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (v.is_zero()) throw UsageError("q must be nonzero");
  if ((v * v).is_one()) throw Error(ErrorCode::degenerate_anisotropy, "q = +-1 is the degenerate point delta = +-1");
  if (classify_regime(v) == Regime::other)
    throw UsageError("exact mode needs real q or a unimodular q; q = " + v.to_string() + " is neither");
  return CircuitParams::exact(v, L, M);
}

std::vector<double> parse_range(const std::string& spec) {
  if (spec.find(':') == std::string::npos) return parse_list(spec);
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_list(item).at(0));
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]))
    throw UsageError("range must be lo:hi:count with count >= 1, got '" + spec + "'");
  const auto count = static_cast<unsigned>(parts[2]);
  std::vector<double> out;
  for (unsigned i = 0; i < count; ++i)
    out.push_back(count == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * i / (count - 1));
  return out;
}

void run_amplitude(const GlobalOptions& g, const AmplitudeOptions& o, RunManifest& m) {
  const Mode mode = parse_mode(g.mode);
  InitialState st = state_from(o.s);
  CircuitParams params = make_params(o.s.q, mode, st.L, st.M);
  Projection proj = parse_projection(o.s.projection);
  json j;
  j["state"] = st.name();
  j["L"] = st.L;
  j["M"] = st.M;
  j["q"] = o.s.q;
  j["n"] = o.s.n;
  j["projection"] = projection_name(proj);
  j["mode"] = g.mode;
  if (mode == Mode::exact) {
    Stopwatch sw;
    AmplitudeResult r = loschmidt_exact(st, params, o.s.n, proj);
    m.timings.emplace_back("amplitude", sw.seconds());
    j["numerator"] = poly_json(r.reduced.num());
    j["denominator"] = poly_json(r.reduced.den());
    j["normalized_numerator"] = poly_json(r.normalized_numerator);
    j["unit"] = r.unit.to_string();
    j["numerator_degree"] = r.numerator_degree;
    j["x4_support"] = r.x4_support;
    j["denominator_factors"] = {{"qx2_minus_1", r.denominator.minus_power},
                                {"qx2_plus_1", r.denominator.plus_power},
                                {"d", r.denominator.d_power},
                                {"K", r.denominator.ledger_K}};
    if (!o.x0.empty()) {
      if (o.x0.find_first_of(".eE") != std::string::npos)
        throw UsageError("exact mode evaluates at Gaussian-rational x0 only");
      j["value_at_x0"] = r.reduced.eval(GaussRat::parse(o.x0)).to_string();
    }
    emit(g, m, "numerator.json", poly_to_json(numerator_for_zeros(r).poly) + "\n");
  } else {
    if (o.x0.empty()) throw UsageError("--mode float evaluates the amplitude numerically and needs --x0");
    const unsigned d = working_digits(g);
    mp::ScopedPrecision prec(d);
    Stopwatch sw;
    mp::Complex v = loschmidt_numeric(st, params, parse_complex(o.x0), o.s.n, proj);
    m.timings.emplace_back("amplitude", sw.seconds());
    j["x0"] = o.x0;
    j["value_at_x0"] = str(v, static_cast<int>(d));
  }
  emit(g, m, "amplitude.json", j.dump(2) + "\n");
}

void run_zeros(const GlobalOptions& g, const ZerosOptions& o, RunManifest& m) {
  DensePoly poly;
  if (!o.in.empty()) {
    poly = poly_from_json(read_file(o.in));
    m.add_input(o.in);
  } else {
    const Mode mode = parse_mode(g.mode);
    if (mode != Mode::exact) throw UsageError("zeros needs exact mode (or --in numerator.json)");
    InitialState st = state_from(o.s);
    CircuitParams params = make_params(o.s.q, mode, st.L, st.M);
    Stopwatch sw;
    AmplitudeResult r = loschmidt_exact(st, params, o.s.n, parse_projection(o.s.projection));
    m.timings.emplace_back("amplitude", sw.seconds());
    poly = numerator_for_zeros(r).poly;
  }
  ZeroOptions zo;
  zo.digits = o.digits ? o.digits : g.digits;
  zo.modular_certificate = !o.no_modular;
  Stopwatch sw;
  ZeroSet zs = find_zeros(poly, zo);
  m.timings.emplace_back("zeros", sw.seconds());
  CertificationReport cert = certify_zeros(poly, zs);
  emit(g, m, "zeros.csv", zeros_to_csv(zs));
  json j;
  j["degree"] = zs.degree;
  j["distinct"] = zs.entries.size();
  j["total_multiplicity"] = zs.total_multiplicity();
  j["digits"] = zs.digits;
  j["valid"] = zs.valid;
  j["note"] = zs.note;
  j["certification"] = {{"count_ok", cert.count_ok},
                        {"separation_ok", cert.separation_ok},
                        {"reconstruction_ok", cert.reconstruction_ok},
                        {"residual_ok", cert.residual_ok},
                        {"usable", cert.usable},
                        {"max_reconstruction_error", cert.max_reconstruction_error},
                        {"detail", cert.detail}};
  emit(g, m, "zeros.json", j.dump(2) + "\n");
  if (!zs.valid) throw Error(ErrorCode::no_convergence, "zero set not certified: " + zs.note);
}

void run_diagnostic(const GlobalOptions& g, const DiagnosticOptions& o, RunManifest& m) {
  const Mode mode = parse_mode(g.mode);
  InitialState st = state_from(o.s);
  CircuitParams params = make_params(o.s.q, mode, st.L, st.M);
  UniversalLocus locus = locus_from(o.locus, params);

  std::vector<ZeroSet> sets;
  std::vector<unsigned> ns;
  if (!o.in.empty()) {
    if (!o.in_n.empty() && o.in_n.size() != o.in.size()) throw UsageError("--in-n needs one depth per --in file");
    for (std::size_t i = 0; i < o.in.size(); ++i) {
      sets.push_back(zeros_from_csv(read_file(o.in[i])));
      m.add_input(o.in[i]);
      ns.push_back(o.in_n.empty() ? o.s.n : o.in_n[i]);
    }
  } else {
    if (mode != Mode::exact) throw UsageError("diagnostic needs exact mode or --in zeros.csv");
    Stopwatch sw;
    AmplitudeResult r = loschmidt_exact(st, params, o.s.n, parse_projection(o.s.projection));
    sets.push_back(find_zeros(numerator_for_zeros(r).poly));
    m.timings.emplace_back("zeros", sw.seconds());
    ns.push_back(o.s.n);
  }

  json j;
  j["locus"] = locus.description();
  j["q"] = o.s.q;
  const double delta = to_d(params.delta().real());
  j["delta"] = delta;
  json dens = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (double eps : parse_list(o.eps)) {
      DensityReport r = zero_density(sets[i], locus, eps, ns[i], delta);
      dens.push_back({{"n", r.n}, {"eps", r.eps}, {"R", r.R}, {"within", r.within}, {"total", r.total}});
    }
  j["density"] = dens;

  if (!o.eps_grid.empty()) {
    // lo:hi:count, spaced geometrically
    std::vector<double> lin = parse_range(o.eps_grid);
    if (o.eps_grid.find(':') == std::string::npos) throw UsageError("--eps-grid takes lo:hi:count");
    std::vector<double> grid = eps_grid(lin.front(), lin.back(), static_cast<unsigned>(lin.size()));
    std::vector<DensityReport> reports;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (double eps : grid) reports.push_back(zero_density(sets[i], locus, eps, ns[i], delta));
    ScalingFit fit = fit_density_scaling(reports);
    j["fit"] = {{"c", fit.c},         {"r", fit.r},         {"residual", fit.residual},
                {"degenerate", fit.degenerate}, {"eps_grid", fit.eps_grid}, {"notes", fit.notes}};
  }

  json sym = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    mp::ScopedPrecision prec(std::max(sets[i].digits, 32u));
    SymmetryReport s = symmetry_report(sets[i], params);
    auto check = [](const SymmetryCheck& c) {
      return json{{"tested", c.tested}, {"pass", c.pass}, {"max_defect", c.max_defect}};
    };
    sym.push_back({{"n", ns[i]}, {"z4", check(s.z4)}, {"conjugation", check(s.conjugation)}});
  }
  j["symmetry"] = sym;

  if (o.scan) {
    ScanGrid grid;
    if (o.grid == "polar") grid.kind = ScanGrid::Kind::polar;
    else if (o.grid == "cartesian") grid.kind = ScanGrid::Kind::cartesian;
    else throw UsageError("unknown grid '" + o.grid + "' (polar, cartesian)");
    grid.lo = o.lo;
    grid.hi = o.hi;
    grid.n_radial = o.n_radial;
    grid.n_angular = o.n_angular;
    ScanOptions so;
    so.tolerance = o.tolerance;
    so.digits = working_digits(g);
    so.state = st;
    so.projection = parse_projection(o.s.projection);
    Stopwatch sw;
    ScanResult sr = equimodular_scan(params, grid, so);
    m.timings.emplace_back("scan", sw.seconds());
    auto pts = [](const std::vector<ScanPoint>& v) {
      json a = json::array();
      for (const auto& p : v)
        a.push_back({{"x", str(p.x, 12)}, {"abs_x", to_d(abs(p.x))}, {"gap", p.gap}, {"weight", p.weight}});
      return a;
    };
    j["scan"] = {{"scanned", sr.scanned},
                 {"spacing", sr.spacing},
                 {"universal", pts(sr.universal)},
                 {"state_dependent", pts(sr.state_dependent)},
                 {"notes", sr.notes}};
  }
  emit(g, m, "diagnostic.json", j.dump(2) + "\n");
}

void run_sweep(const GlobalOptions& g, const SweepOptions& o, RunManifest& m) {
  if (parse_mode(g.mode) != Mode::exact) throw UsageError("sweep runs the exact pipeline; drop --mode float");
  InitialState st = state_from(o.s);
  std::vector<double> deltas = parse_range(o.delta);
  std::vector<SweepPoint> pts =
      delta_sweep(st, deltas, o.s.n, o.eps, parse_projection(o.s.projection), o.max_den);
  std::string csv = "delta_target,delta,q,regime,R,within,total,certified,note\n";
  for (const auto& p : pts) {
    const bool ok = p.note.empty() || p.report.total > 0;
    std::string note = p.note;
    std::replace(note.begin(), note.end(), ',', ';');
    csv += fixed(p.target_delta, 6) + "," + (ok ? fixed(p.choice.delta, 9) : "") + "," +
           (ok ? p.choice.q.to_string() : "") + "," + (ok ? regime_name(p.choice.regime) : "") + "," +
           (ok ? fixed(p.report.R, 6) : "") + "," + std::to_string(p.report.within) + "," +
           std::to_string(p.report.total) + "," + (p.certified ? "1" : "0") + "," + note + "\n";
    m.timings.emplace_back("delta=" + fixed(p.target_delta, 6), p.seconds);
  }
  emit(g, m, "sweep.csv", csv);
}

void run_bethe(const GlobalOptions& g, const BetheOptions& o, RunManifest& m) {
  const unsigned d = working_digits(g);
  mp::ScopedPrecision prec(d);
  CircuitParams params = make_params(o.q, parse_mode(g.mode), o.L, o.m);
  mp::Complex x = parse_complex(o.x0);
  Stopwatch sw;
  BetheSolveReport rep;
  if (o.m == 1) rep = solve_bae_m1(params, x);
  else if (o.m == 2) rep = solve_bae_m2(params, x);
  else throw UsageError("bethe solves M = 1 (closed form) and M = 2 (Newton)");
  std::vector<mp::Complex> spectrum = sector_spectrum(params, x, o.m);
  m.timings.emplace_back("bethe", sw.seconds());
  json sols = json::array();
  for (const auto& s : rep.solutions) {
    mp::Complex tau = floquet_eigenvalue_bethe(s);
    mp::Real res(0);
    for (const auto& r : s.residuals) res = std::max(res, mp::Real(abs(r)));
    sols.push_back({{"u", roots_json(s.u, 30)},
                    {"tau", str(tau, 30)},
                    {"max_residual", to_d(res)},
                    {"spectrum_distance", to_d(spectrum_distance(tau, spectrum))}});
  }
  json j;
  j["q"] = o.q;
  j["L"] = o.L;
  j["M"] = o.m;
  j["x0"] = o.x0;
  j["digits"] = d;
  j["solutions"] = sols;
  j["rejected"] = rep.rejected;
  j["spectrum"] = roots_json(spectrum, 30);
  emit(g, m, "bethe.json", j.dump(2) + "\n");
}

void run_staggered(const GlobalOptions& g, const StaggeredOptions& o, RunManifest& m) {
  const unsigned d = working_digits(g);
  mp::ScopedPrecision prec(d);
  mp::Complex q = parse_complex(o.q);
  StaggeredParams sp;
  const bool slice = !o.x.empty();
  if (slice) {
    if (!o.a.empty() || !o.b.empty()) throw UsageError("--x selects the brickwork slice; drop --a/--b");
    sp = StaggeredParams::brickwork(q, parse_complex(o.x), o.L);
  } else {
    if (o.a.empty() || o.b.empty()) throw UsageError("staggered needs --a and --b (or --x for the brickwork slice)");
    sp = StaggeredParams::from_ab(parse_complex(o.a), parse_complex(o.b), q, parse_arrangement(o.arrangement, o.L));
  }
  Stopwatch sw;
  std::vector<mp::Complex> spec = matrix_eigenvalues(staggered_floquet(sp, o.m));
  m.timings.emplace_back("spectrum", sw.seconds());
  mp::Real defect(0);
  for (const auto& t : spec) defect = std::max(defect, mp::Real(abs(abs(t) - 1)));
  json j;
  j["q"] = o.q;
  j["L"] = o.L;
  j["M"] = o.m;
  json arr = json::array();
  for (int v : sp.arrangement) arr.push_back(v);
  j["arrangement"] = arr;
  j["spectrum"] = roots_json(spec, 30);
  j["max_unimodular_defect"] = to_d(defect);
  if (slice) {
    CircuitParams cp = CircuitParams::floating(q, o.L, o.m);
    std::vector<mp::Complex> main = sector_spectrum(cp, parse_complex(o.x), o.m);
    mp::Real worst(0);
    for (const auto& t : spec) worst = std::max(worst, spectrum_distance(t, main));
    for (const auto& t : main) worst = std::max(worst, spectrum_distance(t, spec));
    j["x"] = o.x;
    j["brickwork_spectrum_distance"] = to_d(worst);
  } else {
    mp::Complex a = parse_complex(o.a), b = parse_complex(o.b);
    UnitarityCheck c = unitarity_conditions(a, b, q);
    json u = {{"imaginary_defect", c.imaginary_defect}, {"norm_defect", c.norm_defect}};
    try {
      UnitarityLocus l = staggered_unitarity_locus(q, b);
      u["locus"] = l.description;
      u["distance"] = to_d(l.distance(a));
    } catch (const Error& e) {
      u["locus"] = nullptr;
      u["note"] = e.what();
    }
    j["a"] = o.a;
    j["b"] = o.b;
    j["unitarity"] = u;
  }
  if (!o.state.empty()) {
    InitialState st = build_initial_state(parse_state_kind(o.state), o.L, o.m);
    json amps = json::array();
    for (unsigned k = 0; k <= o.n; ++k) amps.push_back(str(staggered_loschmidt(st, sp, k), 30));
    j["state"] = st.name();
    j["amplitudes"] = amps;
  }
  emit(g, m, "staggered.json", j.dump(2) + "\n");
}

void run_plot(const GlobalOptions& g, const PlotOptions& o, RunManifest& m) {
  std::string text = read_file(o.in);
  m.add_input(o.in);
  CsvTable t = parse_csv(text);
  const std::string title = o.title.empty() ? fs::path(o.in).filename().string() : o.title;
  auto has = [&](const char* c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };
  auto num = [](const std::string& s) {
    if (s.empty()) return std::nan("");
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "malformed CSV number '" + s + "'");
    }
  };
  std::vector<std::pair<double, double>> pts;
  std::string svg;
  if (has("re_x") && has("im_x")) {
    const std::size_t cr = t.column("re_x"), ci = t.column("im_x");
    for (const auto& r : t.rows) pts.emplace_back(num(r[cr]), num(r[ci]));
    svg = zeros_svg(pts, parse_overlay(o.locus), title);
  } else if (has("delta") && has("R")) {
    const std::size_t cd = t.column("delta"), cR = t.column("R");
    for (const auto& r : t.rows) pts.emplace_back(num(r[cd]), num(r[cR]));
    svg = sweep_svg(pts, title);
  } else {
    throw Error(ErrorCode::parse_error, "plot needs a zeros CSV (re_x, im_x) or a sweep CSV (delta, R)");
  }
  emit(g, m, o.output, svg);
}

}  // namespace gply::cli
