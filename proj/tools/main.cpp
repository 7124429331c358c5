#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "commands.hpp"
#include "gply/error.hpp"
#include "gply/mp.hpp"
#include "gply/parallel.hpp"

using namespace gply::cli;

namespace {

int fail(const std::string& code, const std::string& message, int exit_code) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  return exit_code;
}

void add_state_options(CLI::App* sub, StateOptions& s) {
  sub->add_option("--state", s.state, "dw, dimer, neel or crosscap");
  sub->add_option("--m", s.m, "domain-wall magnon number (default L/2)");
  sub->add_option("--L", s.L, "even number of qubits")->check(CLI::Range(2, 30));
  sub->add_option("--q", s.q, "anisotropy q, e.g. 2 or 3/5+4/5i");
  sub->add_option("--n", s.n, "circuit depth");
  sub->add_option("--projection", s.projection, "none or zero-momentum");
}

std::string option_value(const CLI::Option* opt) {
  if (opt->get_expected_max() == 0) return opt->count() > 0 ? "true" : "false";
  if (opt->count() == 0) return opt->get_default_str();
  std::string out;
  for (const auto& r : opt->results()) out += (out.empty() ? "" : ",") + r;
  return out;
}

void record_options(const CLI::App* app, RunManifest& m) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    m.parameters[name] = option_value(opt);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gate-parameter Lee-Yang zeros of brickwork Loschmidt amplitudes"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker threads (0: hardware)");
  app.add_option("--digits", g.digits, "working precision in decimal digits (0: GPLY_PRECISION or 128)");
  app.add_option("--mode", g.mode, "exact or float");

  AmplitudeOptions amp;
  auto* c_amp = app.add_subcommand("amplitude", "exact rational amplitude, or a numeric value with --mode float");
  add_state_options(c_amp, amp.s);
  c_amp->add_option("--x0", amp.x0, "evaluation point");

  ZerosOptions zer;
  auto* c_zer = app.add_subcommand("zeros", "certified zeros of a numerator");
  add_state_options(c_zer, zer.s);
  c_zer->add_option("--in", zer.in, "numerator JSON (array of [re, im] strings)");
  c_zer->add_option("--zero-digits", zer.digits, "root precision (0: 64 up to degree 1000, 256 above)");
  c_zer->add_flag("--no-modular-certificate", zer.no_modular, "skip the modular square-free check");

  DiagnosticOptions dia;
  auto* c_dia = app.add_subcommand("diagnostic", "zero density, scaling fit, symmetries and equimodular scan");
  add_state_options(c_dia, dia.s);
  c_dia->add_option("--in", dia.in, "zeros CSV, repeatable");
  c_dia->add_option("--in-n", dia.in_n, "depth of each --in file");
  c_dia->add_option("--eps", dia.eps, "comma separated distances");
  c_dia->add_option("--eps-grid", dia.eps_grid, "lo:hi:count geometric grid for the fit");
  c_dia->add_option("--locus", dia.locus, "auto, unit-circle, axes or circle:R");
  c_dia->add_flag("--scan", dia.scan, "run the equimodular scan");
  c_dia->add_option("--grid", dia.grid, "polar or cartesian");
  c_dia->add_option("--lo", dia.lo);
  c_dia->add_option("--hi", dia.hi);
  c_dia->add_option("--n-radial", dia.n_radial);
  c_dia->add_option("--n-angular", dia.n_angular);
  c_dia->add_option("--tolerance", dia.tolerance);

  SweepOptions swp;
  auto* c_swp = app.add_subcommand("sweep", "zero density across the anisotropy");
  add_state_options(c_swp, swp.s);
  c_swp->add_option("--delta", swp.delta, "lo:hi:count or a comma list");
  c_swp->add_option("--eps", swp.eps);
  c_swp->add_option("--max-den", swp.max_den, "denominator bound for the rational q choice");

  BetheOptions bet;
  auto* c_bet = app.add_subcommand("bethe", "Bethe roots and their Floquet eigenvalues");
  c_bet->add_option("--q", bet.q);
  c_bet->add_option("--L", bet.L)->check(CLI::Range(2, 30));
  c_bet->add_option("--m", bet.m, "1 or 2");
  c_bet->add_option("--x0", bet.x0);

  StaggeredOptions stg;
  auto* c_stg = app.add_subcommand("staggered", "inhomogeneous transfer-matrix Floquet operator");
  c_stg->add_option("--a", stg.a);
  c_stg->add_option("--b", stg.b);
  c_stg->add_option("--x", stg.x, "brickwork slice theta2 = -theta1 = xi/2");
  c_stg->add_option("--q", stg.q);
  c_stg->add_option("--L", stg.L)->check(CLI::Range(2, 20));
  c_stg->add_option("--m", stg.m);
  c_stg->add_option("--arrangement", stg.arrangement, "alternating, paired or a comma list of 1/2");
  c_stg->add_option("--state", stg.state, "initial state for amplitudes");
  c_stg->add_option("--n", stg.n, "largest depth for amplitudes");

  PlotOptions plt;
  auto* c_plt = app.add_subcommand("plot", "SVG from a zeros or sweep CSV");
  c_plt->add_option("--in", plt.in)->required();
  c_plt->add_option("--locus", plt.locus, "none, unit-circle, axes or both");
  c_plt->add_option("--title", plt.title);
  c_plt->add_option("--output", plt.output, "file name inside --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  CLI::App* sub = app.get_subcommands().front();
  RunManifest manifest;
  manifest.command = sub->get_name();
  manifest.argv.assign(argv + 1, argv + argc);
  manifest.mode = g.mode;
  manifest.precision = g.digits ? g.digits : gply::mp::default_digits();
  record_options(&app, manifest);
  record_options(sub, manifest);

  auto t0 = std::chrono::steady_clock::now();
  try {
    gply::set_num_threads(g.threads);
    manifest.threads = gply::num_threads();
    gply::mp::ScopedPrecision prec(manifest.precision);
    const std::string& name = manifest.command;
    if (name == "amplitude") run_amplitude(g, amp, manifest);
    else if (name == "zeros") run_zeros(g, zer, manifest);
    else if (name == "diagnostic") run_diagnostic(g, dia, manifest);
    else if (name == "sweep") run_sweep(g, swp, manifest);
    else if (name == "bethe") run_bethe(g, bet, manifest);
    else if (name == "staggered") run_staggered(g, stg, manifest);
    else run_plot(g, plt, manifest);
    manifest.timings.emplace_back("total",
                                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    write_file(std::filesystem::path(g.out) / "manifest.json", manifest.to_json());
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const gply::Error& e) {
    return fail(gply::error_code_name(e.code()), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  for (const auto& f : manifest.outputs) std::cout << f.path << "  " << f.sha256 << "\n";
  return 0;
}
