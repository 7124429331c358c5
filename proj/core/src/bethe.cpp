#include "gply/bethe.hpp"

#include <algorithm>
#include <cmath>

#include "gply/error.hpp"
#include "gply/parallel.hpp"
#include "linalg.hpp"

namespace gply {

using mp::Complex;
using mp::Real;

namespace {

const Real& admissible_gap() {
  static const Real g = Real(1e-8);
  return g;
}

Complex one() { return Complex(Real(1)); }

bool near_zero(const Complex& z) { return abs(z) <= 1000 * mp::epsilon(); }

bool finite(const Complex& z) {
  return boost::multiprecision::isfinite(z.real()) && boost::multiprecision::isfinite(z.imag());
}

bool usable(const std::vector<Complex>& Z) {
  for (const auto& z : Z)
    if (!finite(z) || near_zero(z)) return false;
  return true;
}

// Work with Z = e^{2u}, Q = q^2, X = x^2 = e^xi.
struct Vars {
  Complex Q, X, Xi;
  int L;
  Vars(const Complex& q, const Complex& x, int L_) : Q(q * q), X(x * x), Xi(one() / (x * x)), L(L_) {}

  // single-root factor of the left-hand side, with its four linear pieces
  Complex f_num(const Complex& Z) const { return (Z * Q * Xi - one()) * (Z * Q * X - one()); }
  Complex f_den(const Complex& Z) const { return Q * (Z * Xi - one()) * (Z * X - one()); }
  // Z d/dZ log f
  Complex dlog_f(const Complex& Z) const {
    Complex a = Z * Q * Xi, b = Z * Q * X, c = Z * Xi, d = Z * X;
    return a / (a - one()) + b / (b - one()) - c / (c - one()) - d / (d - one());
  }
  // scattering factor sinh(u_j - u_k + eta) / sinh(u_j - u_k - eta) with W = e^{2(u_k - u_j)}
  Complex r_num(const Complex& W) const { return Q * (W / Q - one()); }
  Complex r_den(const Complex& W) const { return W * Q - one(); }
  Complex dlog_r(const Complex& W) const {
    Complex a = W * Q, b = W / Q;
    return b / (b - one()) - a / (a - one());
  }
};

std::vector<Complex> exp2u(const std::vector<Complex>& u) {
  std::vector<Complex> z(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) z[i] = exp(Real(2) * mp::promote(u[i]));
  return z;
}

Complex infinite() { return Complex(Real(HUGE_VAL), Real(0)); }

bool has_pole(const Vars& v, const std::vector<Complex>& Z, std::string* why) {
  for (std::size_t j = 0; j < Z.size(); ++j) {
    if (abs(Z[j] * v.Xi - one()) < admissible_gap() || abs(Z[j] * v.X - one()) < admissible_gap() ||
        abs(Z[j] * v.Q * v.X - one()) < admissible_gap()) {
      if (why) *why = "root within 1e-8 of a pole";
      return true;
    }
    for (std::size_t k = 0; k < Z.size(); ++k)
      if (k != j && abs(Z[k] / Z[j] / v.Q - one()) < admissible_gap()) {
        if (why) *why = "root pair within 1e-8 of a scattering pole";
        return true;
      }
  }
  return false;
}

bool repeated(const std::vector<Complex>& u) {
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t k = j + 1; k < u.size(); ++k) {
      // u is defined modulo i pi
      Complex d = exp(Real(2) * (u[j] - u[k])) - one();
      if (abs(d) < admissible_gap()) return true;
    }
  return false;
}

BetheRoots make_roots(std::vector<Complex> u, const mp::Complex& q, const mp::Complex& x, int L) {
  BetheRoots r;
  r.u = std::move(u);
  r.L = L;
  r.q = q;
  r.x = x;
  r.singular = repeated(r.u);
  r.residuals = bae_residual(r);
  return r;
}

Complex log_branch(const Complex& Z) { return log(Z) / Real(2); }

bool same_set(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& za : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && abs(za - b[k]) <= admissible_gap() * std::max(Real(1), abs(za))) {
        used[k] = 1;
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

void check_params(const CircuitParams& params, int M) {
  if (params.L < 2 || params.L % 2 != 0) throw Error(ErrorCode::invalid_argument, "L must be even and >= 2");
  if (M < 0 || M > params.L) throw Error(ErrorCode::invalid_argument, "magnon number out of range");
}

}  // namespace

std::vector<Complex> bae_residual(const BetheRoots& roots) {
  Vars v(mp::promote(roots.q), mp::promote(roots.x), roots.L);
  std::vector<Complex> Z = exp2u(roots.u);
  std::vector<Complex> res(Z.size());
  for (std::size_t j = 0; j < Z.size(); ++j) {
    Complex fd = v.f_den(Z[j]);
    if (near_zero(fd)) {
      res[j] = infinite();
      continue;
    }
    Complex lhs = pow(v.f_num(Z[j]) / fd, roots.L / 2);
    Complex rhs = one();
    bool pole = false;
    for (std::size_t k = 0; k < Z.size() && !pole; ++k) {
      if (k == j) continue;
      Complex W = Z[k] / Z[j];
      Complex rd = v.r_den(W);
      if (near_zero(rd)) pole = true;
      else rhs *= v.r_num(W) / rd;
    }
    res[j] = pole ? infinite() : lhs - rhs;
  }
  return res;
}

Complex floquet_eigenvalue_bethe(const BetheRoots& roots) {
  Vars v(mp::promote(roots.q), mp::promote(roots.x), roots.L);
  Complex tau = one();
  for (const Complex& Z : exp2u(roots.u)) {
    Complex num = (Z * v.Q * v.Xi - one()) * (Z * v.X - one());
    Complex den = (Z * v.Q * v.X - one()) * (Z * v.Xi - one());
    if (near_zero(den)) throw Error(ErrorCode::pole, "Bethe root sits on a pole of the eigenvalue");
    tau *= num / den;
  }
  return tau;
}

Complex floquet_eigenvalue_sinh(const BetheRoots& roots) {
  Complex eta = log(mp::promote(roots.q));
  Complex half_xi = log(mp::promote(roots.x));
  Complex tau = one();
  for (const Complex& u0 : roots.u) {
    Complex u = mp::promote(u0);
    Complex den = sinh(u + half_xi + eta) * sinh(u - half_xi);
    if (near_zero(den)) throw Error(ErrorCode::pole, "Bethe root sits on a pole of the eigenvalue");
    tau *= sinh(u - half_xi + eta) * sinh(u + half_xi) / den;
  }
  return tau;
}

BetheSolveReport solve_bae_m1(const CircuitParams& params, const Complex& x) {
  check_params(params, 1);
  Vars v(params.q_numeric(), mp::promote(x), params.L);
  const int half = params.L / 2;
  BetheSolveReport rep;
  std::vector<std::vector<Complex>> accepted;
  bool any_equation = false;
  const Real two_pi = 2 * mp::pi();
  for (int m = 0; m < half; ++m) {
    Real th = two_pi * Real(m) / Real(half);
    Complex w(cos(th), sin(th));
    // (Q^2 - w Q) Z^2 - (Q - w Q)(X + 1/X) Z + (1 - w Q) = 0
    Complex a = v.Q * v.Q - w * v.Q;
    Complex b = -(v.Q - w * v.Q) * (v.X + v.Xi);
    Complex c = one() - w * v.Q;
    std::vector<Complex> Zs;
    if (near_zero(a)) {
      if (near_zero(b)) {
        rep.rejected.push_back("omega index " + std::to_string(m) + ": degenerate equation");
        continue;
      }
      Zs.push_back(-c / b);
    } else {
      Complex disc = sqrt(b * b - Real(4) * a * c);
      Zs.push_back((-b + disc) / (Real(2) * a));
      Zs.push_back((-b - disc) / (Real(2) * a));
    }
    any_equation = true;
    for (const Complex& Z : Zs) {
      std::string why;
      if (near_zero(Z)) {
        rep.rejected.push_back("omega index " + std::to_string(m) + ": root at Z = 0");
        continue;
      }
      if (has_pole(v, {Z}, &why)) {
        rep.rejected.push_back("omega index " + std::to_string(m) + ": " + why);
        continue;
      }
      std::vector<Complex> zs{Z};
      bool dup = false;
      for (const auto& prev : accepted) dup = dup || same_set(prev, zs);
      if (dup) {
        rep.rejected.push_back("omega index " + std::to_string(m) + ": duplicate root");
        continue;
      }
      accepted.push_back(zs);
      rep.solutions.push_back(make_roots({log_branch(Z)}, params.q_numeric(), mp::promote(x), params.L));
    }
  }
  if (!any_equation) throw Error(ErrorCode::degenerate_anisotropy, "every M=1 Bethe equation is degenerate here");
  return rep;
}

namespace {

// log(LHS_j / RHS_j) and its Jacobian in s_j = log Z_j
void log_bae(const Vars& v, const std::vector<Complex>& Z, mp::CVector& e, mp::CMatrix& J) {
  const std::size_t M = Z.size();
  const Real half(v.L / 2);
  e.assign(M, Complex());
  J = mp::CMatrix(M, M);
  for (std::size_t j = 0; j < M; ++j) {
    Complex ratio = pow(v.f_num(Z[j]) / v.f_den(Z[j]), v.L / 2);
    Complex diag = half * v.dlog_f(Z[j]);
    for (std::size_t k = 0; k < M; ++k) {
      if (k == j) continue;
      Complex W = Z[k] / Z[j];
      ratio /= v.r_num(W) / v.r_den(W);
      Complex rho = v.dlog_r(W);
      diag += rho;
      J(j, k) = -rho;
    }
    J(j, j) = diag;
    e[j] = log(ratio);
  }
}

Real max_abs(const mp::CVector& e) {
  Real m = 0;
  for (const auto& z : e) m = std::max(m, abs(z));
  return m;
}

struct NewtonOutcome {
  bool converged = false;
  std::vector<Complex> Z;
  std::string note;
};

NewtonOutcome damped_newton(const Vars& v, std::vector<Complex> Z, unsigned max_iterations) {
  NewtonOutcome out;
  const Real goal = pow(Real(10), -Real(static_cast<double>(mp::current_digits()) * 0.8));
  mp::CVector e;
  mp::CMatrix J;
  try {
    log_bae(v, Z, e, J);
  } catch (const std::exception&) {
    out.note = "seed sits on a pole";
    return out;
  }
  Real err = max_abs(e);
  if (!boost::multiprecision::isfinite(err)) {
    out.note = "seed sits on a pole";
    return out;
  }
  for (unsigned it = 0; it < max_iterations; ++it) {
    if (err <= goal) break;
    mp::CVector step;
    try {
      step = detail::solve_linear(J, e);
    } catch (const Error&) {
      out.note = "singular Jacobian";
      return out;
    }
    Real lambda = 1;
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving) {
      std::vector<Complex> trial(Z.size());
      for (std::size_t j = 0; j < Z.size(); ++j) trial[j] = Z[j] * exp(-lambda * step[j]);
      mp::CVector et;
      mp::CMatrix Jt;
      Real errt(HUGE_VAL);
      if (usable(trial)) {
        log_bae(v, trial, et, Jt);
        errt = max_abs(et);
        if (!boost::multiprecision::isfinite(errt)) errt = Real(HUGE_VAL);
      }
      if (errt < err || errt <= goal) {
        Z = std::move(trial);
        e = std::move(et);
        J = std::move(Jt);
        err = errt;
        accepted = true;
        break;
      }
      lambda /= 2;
    }
    if (!accepted) {
      out.note = "line search stalled";
      return out;
    }
  }
  out.Z = std::move(Z);
  out.converged = err <= goal;
  if (!out.converged) out.note = "no convergence within the iteration limit";
  return out;
}

}  // namespace

BetheSolveReport solve_bae_m2(const CircuitParams& params, const Complex& x, const M2Options& opts) {
  check_params(params, 2);
  Vars v(params.q_numeric(), mp::promote(x), params.L);
  std::vector<std::pair<Complex, Complex>> seeds = opts.seeds;
  if (seeds.empty()) {
    BetheSolveReport one_magnon = solve_bae_m1(params, x);
    const auto& s = one_magnon.solutions;
    const Complex nudge(Real(1e-3), Real(7e-4));
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) seeds.emplace_back(s[a].u[0] + nudge, s[b].u[0] - nudge);
  }

  std::vector<NewtonOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    std::vector<Complex> Z{exp(Real(2) * mp::promote(seeds[i].first)), exp(Real(2) * mp::promote(seeds[i].second))};
    outcomes[i] = damped_newton(v, std::move(Z), opts.max_iterations);
  });

  BetheSolveReport rep;
  std::vector<std::vector<Complex>> accepted;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::string tag = "seed " + std::to_string(i) + ": ";
    const NewtonOutcome& o = outcomes[i];
    if (!o.converged) {
      rep.rejected.push_back(tag + o.note);
      continue;
    }
    std::string why;
    if (!usable(o.Z)) {
      rep.rejected.push_back(tag + "root escaped to 0 or infinity");
      continue;
    }
    if (has_pole(v, o.Z, &why)) {
      rep.rejected.push_back(tag + why);
      continue;
    }
    std::vector<Complex> u{log_branch(o.Z[0]), log_branch(o.Z[1])};
    if (repeated(u)) {
      rep.rejected.push_back(tag + "repeated roots");
      continue;
    }
    bool dup = false;
    for (const auto& prev : accepted) dup = dup || same_set(prev, o.Z);
    if (dup) {
      rep.rejected.push_back(tag + "duplicate of an earlier solution");
      continue;
    }
    BetheRoots r = make_roots(u, params.q_numeric(), mp::promote(x), params.L);
    Real worst = 0;
    for (const auto& res : r.residuals) worst = finite(res) ? std::max(worst, Real(abs(res))) : Real(HUGE_VAL);
    if (!(worst < Real(1e-20))) {
      rep.rejected.push_back(tag + "residual " + mp::to_string(worst, 4) + " above 1e-20");
      continue;
    }
    accepted.push_back(o.Z);
    rep.solutions.push_back(std::move(r));
  }
  return rep;
}

std::vector<Complex> matrix_eigenvalues(const mp::CMatrix& a) { return detail::eigenvalues(a); }

std::vector<Complex> sector_spectrum(const CircuitParams& params, const Complex& x, int M) {
  check_params(params, M);
  return detail::eigenvalues(floquet_matrix_numeric(params, mp::promote(x), params.L, M));
}

Real spectrum_distance(const Complex& tau, const std::vector<Complex>& spectrum) {
  Real best(HUGE_VAL);
  for (const auto& l : spectrum) best = std::min(best, Real(abs(tau - l)));
  return best;
}

Complex SpectralDecomposition::weight_sum() const {
  Complex s;
  for (const auto& t : terms) s += t.weight;
  return s;
}

Complex SpectralDecomposition::evaluate(unsigned n) const {
  Complex s;
  for (const auto& t : terms) s += t.weight * pow(t.lambda, static_cast<int>(n));
  return s;
}

SpectralDecomposition spectral_decomposition(const InitialState& state, const CircuitParams& params,
                                             const Complex& x0, Projection projection) {
  if (params.L != state.L) throw Error(ErrorCode::sector_mismatch, "params.L does not match the state");
  SpectralDecomposition out;
  out.params = params;
  out.x0 = mp::promote(x0);
  out.state = state.name();
  out.projection = projection;
  for (const auto& [m, ket] : state.sectors) {
    const std::size_t dim = ket.size();
    GaussRat bra_scale;
    std::vector<long> bra = projected_bra(state, m, projection, &bra_scale);
    const Complex bs = mp::to_complex(bra_scale);
    mp::CMatrix U = floquet_matrix_numeric(params, out.x0, params.L, m);
    detail::EigenSystem es = detail::eigen_system(U);
    out.worst_condition = std::max(out.worst_condition, es.worst_condition);
    for (std::size_t j = 0; j < dim; ++j) {
      Complex br, lk;
      for (std::size_t a = 0; a < dim; ++a) {
        if (bra[a] != 0) br += Real(bra[a]) * es.right(a, j);
        if (ket[a] != 0) lk += es.left(j, a) * Real(ket[a]);
      }
      out.terms.push_back({es.values[j], bs * br * lk, m});
    }
  }
  return out;
}

}  // namespace gply
