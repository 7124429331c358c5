#include <doctest.h>

#include <cmath>

#include "gply/diagnostics.hpp"
#include "gply/error.hpp"

using namespace gply;
using mp::Complex;
using mp::Real;

namespace {

ZeroSet synthetic(const std::vector<std::pair<double, double>>& pts, unsigned mult = 1) {
  ZeroSet zs;
  zs.digits = 40;
  zs.valid = true;
  mp::ScopedPrecision prec(40);
  for (auto [re, im] : pts) {
    ZeroEntry e;
    e.root = mp::make_complex(re, im);
    e.multiplicity = mult;
    zs.entries.push_back(e);
    zs.degree += static_cast<int>(mult);
  }
  return zs;
}

ZeroSet on_circle(int count, double radius) {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < count; ++k)
    pts.emplace_back(radius * std::cos(2 * M_PI * k / count + 0.1), radius * std::sin(2 * M_PI * k / count + 0.1));
  return synthetic(pts);
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("universal loci") {
    CHECK(universal_locus(GaussRat(2)).kind == LocusKind::unit_circle);
    CHECK(universal_locus(GaussRat(mpq_class(1, 3))).kind == LocusKind::unit_circle);
    CHECK(universal_locus(GaussRat::parse("3/5+4/5i")).kind == LocusKind::axes);
    CHECK_THROWS_AS(universal_locus(GaussRat(1)), Error);
    CHECK_THROWS_AS(universal_locus(GaussRat::parse("1+i")), Error);
    mp::ScopedPrecision prec(30);
    UniversalLocus axes = universal_locus(GaussRat::parse("3/5+4/5i"));
    CHECK(axes.distance(mp::make_complex(0.3, -2)) == Real(0.3));
    CHECK(abs(circle_locus(1).distance(mp::make_complex(0.6, 0.8))) < Real(1e-15));
    CHECK(abs(circle_locus(0.9).distance(mp::make_complex(0, 1)) - Real(0.1)) < Real(1e-15));
  }

  TEST_CASE("zero density") {
    DensityReport r = zero_density(on_circle(12, 1), circle_locus(1), 1e-9);
    CHECK(r.R == 1);
    CHECK(r.total == 12);
    DensityReport off = zero_density(on_circle(12, 1.02), circle_locus(1), 0.01);
    CHECK(off.R == 0);
    ZeroSet mixed = synthetic({{1, 0}, {0, 0.5}}, 3);
    mixed.entries[1].multiplicity = 1;
    DensityReport w = zero_density(mixed, circle_locus(1), 0.1);
    CHECK(w.within == 3);
    CHECK(w.total == 4);
    CHECK(w.R == doctest::Approx(0.75));
    CHECK_THROWS_AS(zero_density(ZeroSet{}, circle_locus(1), 0.1), Error);
  }

  TEST_CASE("property: density is bounded and monotone in eps") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < 60; ++k) pts.emplace_back(std::cos(k * 1.7) * (1 + 0.01 * (k % 13)), std::sin(k * 1.7));
    ZeroSet zs = synthetic(pts);
    double prev = 0;
    for (double eps : eps_grid(1e-4, 1, 25)) {
      DensityReport r = zero_density(zs, circle_locus(1), eps);
      CHECK(r.R >= 0);
      CHECK(r.R <= 1);
      CHECK(r.R >= prev);
      prev = r.R;
    }
  }

  TEST_CASE("scaling fit") {
    std::vector<DensityReport> reps;
    for (double eps : eps_grid(1e-3, 1e-1, 7)) {
      DensityReport r;
      r.eps = eps;
      r.R = 1 - 0.5 * std::pow(eps, 0.2);
      reps.push_back(r);
    }
    ScalingFit f = fit_density_scaling(reps);
    CHECK(std::abs(f.c - 0.5) < 1e-10);
    CHECK(std::abs(f.r - 0.2) < 1e-10);
    CHECK(f.residual < 1e-10);
    CHECK(!f.degenerate);

    for (auto& r : reps) r.R = 0.4;
    ScalingFit flat = fit_density_scaling(reps);
    CHECK(std::abs(flat.r) < 1e-10);
    CHECK(flat.degenerate);

    std::vector<DensityReport> ones = reps;
    for (auto& r : ones) r.R = 1;
    CHECK_THROWS_AS(fit_density_scaling(ones), Error);
    reps[0].R = 1;
    ScalingFit some = fit_density_scaling(reps);
    CHECK(!some.notes.empty());
    CHECK_THROWS_AS(fit_density_scaling(std::vector<DensityReport>(reps.begin(), reps.begin() + 3)), Error);

    std::vector<double> g = eps_grid(1e-3, 1e-1, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(1e-2));
  }

  TEST_CASE("symmetry checks") {
    CircuitParams massive = CircuitParams::exact(GaussRat(2), 8, 2);
    ZeroSet good = synthetic({{0.5, 0.2}, {-0.2, 0.5}, {-0.5, -0.2}, {0.2, -0.5},
                              {0.5, -0.2}, {0.2, 0.5}, {-0.5, 0.2}, {-0.2, -0.5}});
    SymmetryReport s = symmetry_report(good, massive);
    CHECK(s.z4.tested);
    CHECK(s.z4.pass);
    CHECK(s.conjugation.tested);
    CHECK(s.conjugation.pass);

    ZeroSet bad = synthetic({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {2, 0.5}});
    SymmetryReport b = symmetry_report(bad, massive);
    CHECK(!b.z4.pass);
    CHECK(!b.conjugation.pass);
    mp::ScopedPrecision prec(40);
    CHECK(abs(b.z4.worst_root - mp::make_complex(2, 0.5)) < Real(1e-12));

    // conjugation is not asserted for complex q
    CircuitParams massless = CircuitParams::exact(GaussRat::parse("3/5+4/5i"), 8, 2);
    CHECK(!symmetry_report(good, massless).conjugation.tested);
  }

  TEST_CASE("anisotropy choice for sweeps") {
    AnisotropyChoice a = choose_anisotropy(0.6);
    CHECK(a.q == GaussRat::parse("3/5+4/5i"));
    CHECK(a.regime == Regime::massless);
    CHECK(a.delta == doctest::Approx(0.6));
    AnisotropyChoice b = choose_anisotropy(1.25);
    CHECK(b.q == GaussRat(2));
    CHECK(b.regime == Regime::massive);
    for (double d : {0.05, 0.3, 0.93, 1.07, 1.6, 3.0}) {
      AnisotropyChoice c = choose_anisotropy(d);
      CHECK(std::abs(c.delta - d) < 2e-3);
      CHECK(classify_regime(c.q) == (d < 1 ? Regime::massless : Regime::massive));
      GaussRat qi = c.q.inverse();
      CHECK(std::abs(((c.q + qi) * GaussRat(mpq_class(1, 2))).re_double() - c.delta) < 1e-12);
    }
    CHECK_THROWS_AS(choose_anisotropy(1.0), Error);
  }

  TEST_CASE("delta sweep reports the degenerate point") {
    InitialState st = build_initial_state(StateKind::domain_wall, 4, 1);
    std::vector<SweepPoint> pts = delta_sweep(st, {0.6, 1.0, 1.25}, 3, 1e-2);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].note.empty());
    CHECK(pts[0].certified);
    CHECK(!pts[1].note.empty());
    CHECK(pts[1].report.total == 0);
    CHECK(pts[2].choice.q == GaussRat(2));
    CHECK(pts[2].report.total == static_cast<unsigned>(pts[2].degree));
  }

  TEST_CASE("equimodular scan finds the loci") {
    ScanGrid grid;
    grid.n_radial = 5;
    grid.n_angular = 16;
    ScanOptions opts;
    opts.digits = 40;
    ScanResult massive = equimodular_scan(CircuitParams::exact(GaussRat(2), 4, 2), grid, opts);
    REQUIRE(!massive.universal.empty());
    for (const auto& p : massive.universal) CHECK(std::abs(abs(p.x).convert_to<double>() - 1) < massive.spacing);

    ScanGrid square;
    square.kind = ScanGrid::Kind::cartesian;
    square.lo = -1.2;
    square.hi = 1.2;
    square.n_radial = 13;
    square.n_angular = 13;
    ScanResult massless = equimodular_scan(CircuitParams::exact(GaussRat::parse("3/5+4/5i"), 4, 2), square, opts);
    REQUIRE(!massless.universal.empty());
    // x^4 real off the axes is unimodular too, so diagonal hits are genuine
    std::size_t on_axes = 0;
    for (const auto& p : massless.universal) {
      double re = std::abs(p.x.real().convert_to<double>()), im = std::abs(p.x.imag().convert_to<double>());
      on_axes += std::min(re, im) < massless.spacing;
      CHECK((std::min(re, im) < massless.spacing || std::abs(re - im) < massless.spacing));
    }
    CHECK(on_axes > 0);

    // at L=8 the rays x^4 < 0 carry conjugate-pair branches that the domain wall sees
    ScanGrid ring;
    ring.lo = ring.hi = 0.8;
    ring.n_radial = 1;
    ring.n_angular = 8;
    ScanOptions with_state = opts;
    with_state.state = build_initial_state(StateKind::domain_wall, 8, 2);
    with_state.projection = Projection::zero_momentum;
    ScanResult rays = equimodular_scan(CircuitParams::exact(GaussRat(2), 8, 2), ring, with_state);
    CHECK(rays.universal.size() == 4);
    for (const auto& p : rays.universal) {
      CHECK(std::abs(std::abs(p.x.real().convert_to<double>()) - std::abs(p.x.imag().convert_to<double>())) < 1e-12);
      CHECK(p.weight > 1e-3);
    }

    ScanOptions wrong = opts;
    wrong.state = build_initial_state(StateKind::domain_wall, 4, 1);
    CHECK_THROWS_AS(equimodular_scan(CircuitParams::exact(GaussRat(2), 4, 2), grid, wrong), Error);
  }
}
