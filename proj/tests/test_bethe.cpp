#include <doctest.h>

#include <random>

#include "gply/bethe.hpp"
#include "gply/error.hpp"
#include "linalg.hpp"

using namespace gply;
using mp::Complex;
using mp::Real;

namespace {

Complex cx(double re, double im = 0) { return mp::make_complex(re, im); }
double d(const Real& v) { return v.convert_to<double>(); }

const Complex& third() {
  static const Complex v = Complex(Real(1) / 3);
  return v;
}

void check_membership(const CircuitParams& p, const Complex& x, int M, double tol, std::size_t min_found) {
  BetheSolveReport rep = M == 1 ? solve_bae_m1(p, x) : solve_bae_m2(p, x);
  std::vector<Complex> spec = sector_spectrum(p, x, M);
  CHECK(rep.solutions.size() >= min_found);
  for (const auto& s : rep.solutions) {
    Complex tau = floquet_eigenvalue_bethe(s);
    CHECK(d(spectrum_distance(tau, spec)) < tol);
    CHECK(d(abs(tau - floquet_eigenvalue_sinh(s))) < 1e-40);
  }
}

}  // namespace

TEST_SUITE("bethe") {
  TEST_CASE("empty root set") {
    mp::ScopedPrecision prec(50);
    BetheRoots r;
    r.L = 4;
    r.q = cx(2);
    r.x = cx(0.3, 0.1);
    CHECK(bae_residual(r).empty());
    CHECK(abs(floquet_eigenvalue_bethe(r) - cx(1)) == 0);
  }

  TEST_CASE("M=1 at the identity point from the explicit quadratic") {
    mp::ScopedPrecision prec(60);
    // L=4, x=1: ((ZQ-1)^2 / (Q (Z-1)^2))^2 = 1, so (ZQ-1)^2 = w Q (Z-1)^2 with w = +-1
    const Complex Q = cx(4);
    for (int w : {1, -1}) {
      Complex a = Q * Q - Real(w) * Q, b = -(Real(2) * Q - Real(2 * w) * Q), c = cx(1) - Real(w) * Q;
      Complex disc = sqrt(b * b - Real(4) * a * c);
      for (const Complex& Z : {(-b + disc) / (Real(2) * a), (-b - disc) / (Real(2) * a)}) {
        if (abs(Z - cx(1)) < Real(1e-30)) continue;
        BetheRoots r;
        r.L = 4;
        r.q = cx(2);
        r.x = cx(1);
        r.u = {log(Z) / Real(2)};
        auto res = bae_residual(r);
        REQUIRE(res.size() == 1);
        CHECK(d(abs(res[0])) < 1e-20);
        CHECK(d(abs(floquet_eigenvalue_bethe(r) - cx(1))) < 1e-50);
      }
    }
    BetheRoots junk;
    junk.L = 4;
    junk.q = cx(2);
    junk.x = cx(1);
    junk.u = {cx(0.37, 0.21)};
    CHECK(d(abs(bae_residual(junk)[0])) > 1e-3);
  }

  TEST_CASE("identity circuit gives unit eigenvalues") {
    mp::ScopedPrecision prec(60);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 4, 1);
    BetheSolveReport rep = solve_bae_m1(p, cx(1));
    for (const auto& s : rep.solutions) CHECK(d(abs(floquet_eigenvalue_bethe(s) - cx(1))) < 1e-40);
  }

  TEST_CASE("M=1 membership") {
    mp::ScopedPrecision prec(128);
    CircuitParams p4 = CircuitParams::exact(GaussRat(2), 4, 1);
    check_membership(p4, third(), 1, 1e-10, 1);
    CircuitParams p6 = CircuitParams::exact(GaussRat(2), 6, 1);
    check_membership(p6, third(), 1, 1e-10, 1);
    CircuitParams ml = CircuitParams::exact(GaussRat::parse("3/5+4/5i"), 6, 1);
    check_membership(ml, cx(0.4, 0.3), 1, 1e-10, 1);
  }

  TEST_CASE("M=2 membership") {
    mp::ScopedPrecision prec(128);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 8, 2);
    check_membership(p, third(), 2, 1e-8, 1);
  }

  TEST_CASE("M=2 Newton fixed point and divergence") {
    mp::ScopedPrecision prec(80);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 6, 2);
    BetheSolveReport rep = solve_bae_m2(p, third());
    REQUIRE(!rep.solutions.empty());
    const BetheRoots& s = rep.solutions.front();
    M2Options again;
    again.seeds = {{s.u[0], s.u[1]}};
    BetheSolveReport fixed = solve_bae_m2(p, third(), again);
    REQUIRE(fixed.solutions.size() == 1);
    for (int k = 0; k < 2; ++k) CHECK(d(abs(fixed.solutions[0].u[k] - s.u[k])) < 1e-40);

    M2Options far;
    far.seeds = {{cx(40, 3), cx(-55, 1)}};
    far.max_iterations = 50;
    BetheSolveReport lost = solve_bae_m2(p, third(), far);
    CHECK(lost.solutions.empty());
    CHECK(!lost.rejected.empty());
  }

  TEST_CASE("eigenvalue continuity around a loop") {
    mp::ScopedPrecision prec(60);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 6, 1);
    const Complex x0 = cx(0.45, 0.2);
    auto taus = [&](const Complex& x) {
      std::vector<Complex> out;
      for (const auto& s : solve_bae_m1(p, x).solutions) out.push_back(floquet_eigenvalue_bethe(s));
      return out;
    };
    std::vector<Complex> start = taus(x0 + cx(0.01));
    REQUIRE(!start.empty());
    Complex tau = start.front();
    const int steps = 64;
    for (int k = 1; k <= steps; ++k) {
      double th = 2 * M_PI * k / steps;
      std::vector<Complex> here = taus(x0 + cx(0.01 * std::cos(th), 0.01 * std::sin(th)));
      REQUIRE(!here.empty());
      Complex best = here.front();
      for (const auto& t : here)
        if (abs(t - tau) < abs(best - tau)) best = t;
      tau = best;
    }
    CHECK(d(abs(tau - start.front())) < 1e-12);
  }

  TEST_CASE("spectral decomposition") {
    mp::ScopedPrecision prec(128);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (const char* kind : {"dw", "crosscap"}) {
      InitialState st = build_initial_state(parse_state_kind(kind), 6, 3);
      for (Projection proj : {Projection::none, Projection::zero_momentum}) {
        CircuitParams p = CircuitParams::exact(GaussRat(2), 6, st.M);
        Complex x0 = cx(u(rng), u(rng));
        SpectralDecomposition sd = spectral_decomposition(st, p, x0, proj);
        if (proj == Projection::none) CHECK(d(abs(sd.weight_sum() - cx(static_cast<double>(st.norm2())))) < 1e-10);
        CHECK(d(abs(sd.evaluate(0) - loschmidt_numeric(st, p, x0, 0, proj))) < 1e-10);
        for (unsigned n : {1u, 5u, 25u}) {
          Complex want = loschmidt_numeric(st, p, x0, n, proj);
          CHECK(d(abs(sd.evaluate(n) - want) / abs(want)) < 1e-10);
        }
      }
    }
    CircuitParams p = CircuitParams::exact(GaussRat(2), 6, 3);
    SpectralDecomposition on = spectral_decomposition(build_initial_state(StateKind::dimer, 6), p, cx(0.8, 0.6));
    for (const auto& t : on.terms) CHECK(std::abs(d(abs(t.lambda)) - 1) < 1e-12);
  }

  TEST_CASE("defective matrices are reported") {
    mp::ScopedPrecision prec(50);
    mp::CMatrix jordan(2, 2);
    jordan(0, 0) = cx(1);
    jordan(0, 1) = cx(1);
    jordan(1, 1) = cx(1);
    CHECK_THROWS_AS(detail::eigen_system(jordan), Error);
    mp::CMatrix diag = mp::CMatrix::identity(2);
    diag(1, 1) = cx(2);
    detail::EigenSystem es = detail::eigen_system(diag);
    CHECK(es.values.size() == 2);
  }
}
