#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

namespace {

std::uint64_t bit(int L, int site) { return std::uint64_t{1} << (L - site); }

void apply_pair(std::vector<GaussRat>& v, int L, int i, int j, const GaussRat& b, const GaussRat& c) {
  const std::uint64_t mi = bit(L, i), mj = bit(L, j);
  for (std::uint64_t s = 0; s < v.size(); ++s) {
    if (!(s & mi) || (s & mj)) continue;  // visit each |..1..0..> once
    const std::uint64_t t = s ^ mi ^ mj;
    GaussRat vs = v[s], vt = v[t];
    v[s] = b * vs + c * vt;
    v[t] = c * vs + b * vt;
  }
}

}  // namespace

FullState make_state(const std::string& kind, int L, int M) {
  FullState st;
  st.L = L;
  st.amp.assign(std::size_t{1} << L, GaussRat(0));
  const int h = L / 2;
  if (kind == "dw") {
    std::uint64_t s = 0;
    for (int k = 1; k <= M; ++k) s |= bit(L, k);
    st.amp[s] = 1;
  } else if (kind == "neel") {
    std::uint64_t s = 0;
    for (int k = 2; k <= L; k += 2) s |= bit(L, k);
    st.amp[s] = 1;
  } else if (kind == "dimer") {
    // prod_j (|10> - |01>) on (2j-1, 2j)
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << h); ++c) {
      std::uint64_t s = 0;
      long sign = 1;
      for (int j = 1; j <= h; ++j) {
        if ((c >> (j - 1)) & 1) {
          s |= bit(L, 2 * j);
          sign = -sign;
        } else {
          s |= bit(L, 2 * j - 1);
        }
      }
      st.amp[s] = GaussRat(sign);
    }
  } else if (kind == "crosscap") {
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << h); ++c) {
      std::uint64_t s = 0;
      for (int j = 1; j <= h; ++j)
        if ((c >> (j - 1)) & 1) s |= bit(L, j) | bit(L, j + h);
      st.amp[s] = 1;
    }
  } else {
    throw std::invalid_argument(kind);
  }
  return st;
}

void gate(const GaussRat& q, const GaussRat& x, GaussRat& b, GaussRat& c) {
  GaussRat x2 = x * x, x4 = x2 * x2, q2 = q * q;
  GaussRat d = q2 * x4 - GaussRat(1);
  b = (q2 - GaussRat(1)) * x2 / d;
  c = q * (x4 - GaussRat(1)) / d;
}

std::vector<GaussRat> amplitudes(const FullState& psi, const GaussRat& q, const GaussRat& x,
                                 const std::vector<unsigned>& ns, bool zero_momentum) {
  const int L = psi.L;
  GaussRat b, c;
  gate(q, x, b, c);
  const std::uint64_t full = (std::uint64_t{1} << L) - 1;
  std::vector<GaussRat> bra = psi.amp;
  if (zero_momentum) {
    bra.assign(psi.amp.size(), GaussRat(0));
    for (std::uint64_t s = 0; s <= full; ++s) {
      if (psi.amp[s].is_zero()) continue;
      std::uint64_t t = s;
      for (int k = 0; k < L / 2; ++k) {
        bra[t] += psi.amp[s] * GaussRat(mpq_class(2, L));
        t = ((t >> 2) | (t << (L - 2))) & full;
      }
    }
  }
  std::vector<GaussRat> v = psi.amp, out;
  unsigned done = 0;
  for (unsigned n : ns) {
    for (; done < n; ++done) {
      for (int j = 1; j < L; j += 2) apply_pair(v, L, j, j + 1, b, c);
      for (int j = 2; j <= L; j += 2) apply_pair(v, L, j, j % L + 1, b, c);
    }
    GaussRat acc(0);
    for (std::uint64_t s = 0; s <= full; ++s)
      if (!bra[s].is_zero() && !v[s].is_zero()) acc += bra[s].conj() * v[s];
    out.push_back(acc);
  }
  return out;
}

}  // namespace oracle
