#include <doctest.h>

#include <random>

#include "gply/amplitude.hpp"
#include "gply/error.hpp"
#include "oracle.hpp"

using namespace gply;

namespace {

const char* const kStates[] = {"dw", "dimer", "neel", "crosscap"};

InitialState make(const std::string& kind, int L) {
  return build_initial_state(parse_state_kind(kind), L, kind == "dw" ? L / 2 : -1);
}

GaussRat random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(2, 11);
  return GaussRat(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

// coefficients of x^k after rescaling p so its constant term equals c0
GaussRat matched(const DensePoly& p, const GaussRat& c0, std::size_t k) { return p[k] * (c0 / p[0]); }

GaussRat gi(const char* re, const char* im) { return GaussRat(mpq_class(re), mpq_class(im)); }

}  // namespace

TEST_SUITE("amplitude") {
  TEST_CASE("initial states") {
    InitialState cc = build_initial_state(StateKind::crosscap, 4);
    REQUIRE(cc.sectors.size() == 3);
    auto coeff = [](const InitialState& st, const char* label) {
      int m = 0;
      for (const char* c = label; *c; ++c) m += *c == '1';
      auto it = st.sectors.find(m);
      if (it == st.sectors.end()) return 0L;
      return it->second[SectorBasis(st.L, m).index(SectorBasis::parse_label(label))];
    };
    CHECK(coeff(cc, "0000") == 1);
    CHECK(coeff(cc, "0101") == 1);
    CHECK(coeff(cc, "1010") == 1);
    CHECK(coeff(cc, "1111") == 1);
    CHECK(coeff(cc, "1100") == 0);
    CHECK(cc.norm2() == 4);

    InitialState dm = build_initial_state(StateKind::dimer, 4);
    REQUIRE(dm.sectors.size() == 1);
    CHECK(dm.M == 2);
    CHECK(coeff(dm, "1010") == 1);
    CHECK(coeff(dm, "1001") == -1);
    CHECK(coeff(dm, "0110") == -1);
    CHECK(coeff(dm, "0101") == 1);
    CHECK(dm.norm2() == 4);

    InitialState ne = build_initial_state(StateKind::neel, 8);
    CHECK(ne.M == 4);
    CHECK(coeff(ne, "01010101") == 1);
    CHECK(ne.norm2() == 1);

    InitialState dw = build_initial_state(StateKind::domain_wall, 8, 2);
    CHECK(coeff(dw, "11000000") == 1);
    CHECK_THROWS_AS(build_initial_state(StateKind::domain_wall, 7, 2), Error);
    CHECK_THROWS_AS(parse_state_kind("ghz"), Error);
  }

  TEST_CASE("massive benchmark polynomial") {
    InitialState st = build_initial_state(StateKind::domain_wall, 8, 2);
    AmplitudeResult r = loschmidt_exact(st, CircuitParams::exact(GaussRat(2), 8, 2), 10, Projection::zero_momentum);
    const DensePoly& P = r.reduced.num();
    REQUIRE(P.degree() == 152);
    CHECK(r.reduced.den() == DensePoly({1, 0, 0, 0, -4}).pow(38).monic());
    const GaussRat c0(mpq_class("1073741824"));
    CHECK(matched(P, c0, 152) == GaussRat(mpq_class("70368744177664")));
    CHECK(matched(P, c0, 148) == GaussRat(mpq_class("2446138493894656")));
    CHECK(matched(P, c0, 144) == GaussRat(mpq_class("602576833522696192")));
    CHECK(matched(P, c0, 140) == GaussRat(mpq_class("18202458634699407360")));
    CHECK(matched(P, c0, 136) == GaussRat(mpq_class("269872182071578853376")));
    CHECK(matched(P, c0, 12) == GaussRat(mpq_class("99008469176156160")));
    CHECK(matched(P, c0, 8) == GaussRat(mpq_class("2152191452250112")));
    CHECK(matched(P, c0, 4) == GaussRat(mpq_class("12957647896576")));
    CHECK(r.x4_support);
    CHECK(r.normalized_numerator.has_real_coeffs());
    CHECK(numerator_for_zeros(r).degree == 152);
  }

  TEST_CASE("massless benchmark polynomial") {
    InitialState st = build_initial_state(StateKind::domain_wall, 8, 2);
    const GaussRat q = GaussRat::parse("3/5+4/5i");
    AmplitudeResult r = loschmidt_exact(st, CircuitParams::exact(q, 8, 2), 10, Projection::zero_momentum);
    const DensePoly& P = r.reduced.num();
    REQUIRE(P.degree() == 152);
    DensePoly den({GaussRat(-3, 4), 0, 0, 0, GaussRat(3, 4)});
    CHECK(r.reduced.den() == den.pow(38).monic());
    const GaussRat c0 = gi("153512693941593170166015625", "-329822301864624023437500000");
    CHECK(matched(P, c0, 152) == gi("153512693941593170166015625", "329822301864624023437500000"));
    CHECK(matched(P, c0, 148) == -gi("22961938008666038513183593750", "-5381798744201660156250000000"));
    CHECK(matched(P, c0, 144) == -gi("1106205148989260196685791015625", "3455163717927932739257812500000"));
    CHECK(matched(P, c0, 8) == -gi("1106205148989260196685791015625", "-3455163717927932739257812500000"));
    CHECK(matched(P, c0, 4) == -gi("22961938008666038513183593750", "5381798744201660156250000000"));
    CHECK(r.x4_support);
  }

  TEST_CASE("hand-computed single step") {
    InitialState st = build_initial_state(StateKind::domain_wall, 4, 1);
    AmplitudeResult r = loschmidt_exact(st, CircuitParams::exact(GaussRat(2), 4, 1), 1);
    CHECK(r.reduced.eval(GaussRat(mpq_class(1, 3))) == GaussRat(mpq_class(729, 5929)));
    // b^2 = 9 x^4 / (4 x^4 - 1)^2
    RationalFn b2(DensePoly({0, 0, 0, 0, 9}), DensePoly({1, 0, 0, 0, -4}).pow(2));
    for (int k = 2; k < 7; ++k) {
      GaussRat x(mpq_class(k, 7), mpq_class(1, k));
      CHECK(r.reduced.eval(x) == b2.eval(x));
    }
  }

  TEST_CASE("frozen depth-3 values") {
    InitialState st = build_initial_state(StateKind::domain_wall, 8, 2);
    CircuitParams massive = CircuitParams::exact(GaussRat(2), 8, 2);
    const GaussRat half(mpq_class(1, 2));
    CHECK(loschmidt_exact(st, massive, 3).reduced.eval(half) == GaussRat(mpq_class(1030481, 256)));
    CHECK(loschmidt_exact(st, massive, 3, Projection::zero_momentum).reduced.eval(half) ==
          GaussRat(mpq_class(7181731, 1024)));
    CircuitParams massless = CircuitParams::exact(GaussRat::parse("3/5+4/5i"), 8, 2);
    GaussRat v = loschmidt_exact(st, massless, 3).reduced.eval(GaussRat::parse("1/2+1/3i"));
    CHECK(v == GaussRat(mpq_class("267825785614755554836856106518240733526566419110255941302185979526144/"
                                  "230334601522672383922964685722840072872403872140261800680390820377249"),
                        mpq_class("-19960091575163206581419942805604449432679451940761458281883708538880/"
                                  "32904943074667483417566383674691438981771981734323114382912974339607")));
  }

  TEST_CASE("depth zero and the identity point") {
    for (const char* k : kStates)
      for (int L : {4, 6}) {
        InitialState st = make(k, L);
        for (const GaussRat& q : {GaussRat(2), GaussRat::parse("3/5+4/5i")}) {
          CircuitParams p = CircuitParams::exact(q, L, st.M);
          AmplitudeResult r0 = loschmidt_exact(st, p, 0);
          CHECK(r0.reduced.num() == DensePoly({GaussRat(st.norm2())}));
          for (unsigned n : {1u, 3u, 6u}) CHECK(loschmidt_exact(st, p, n).reduced.eval(GaussRat(1)) == GaussRat(st.norm2()));
        }
      }
    CHECK(loschmidt_exact(make("crosscap", 4), CircuitParams::exact(GaussRat(2), 4), 0).reduced.eval(GaussRat(5)) ==
          GaussRat(4));
  }

  TEST_CASE("agreement with the full statevector oracle") {
    std::mt19937_64 rng(31);
    const std::vector<unsigned> ns = {0, 1, 2, 4};
    for (const char* k : kStates)
      for (int L : {4, 6}) {
        InitialState st = make(k, L);
        oracle::FullState full = oracle::make_state(k, L, L / 2);
        for (const GaussRat& q : {GaussRat(3), GaussRat::parse("5/13+12/13i")})
          for (bool zm : {false, true}) {
            std::vector<RationalFn> fs;
            for (unsigned n : ns)
              fs.push_back(loschmidt_exact(st, CircuitParams::exact(q, L, st.M), n,
                                           zm ? Projection::zero_momentum : Projection::none)
                               .reduced);
            for (int t = 0; t < 3; ++t) {
              GaussRat x = random_point(rng);
              std::vector<GaussRat> want = oracle::amplitudes(full, q, x, ns, zm);
              for (std::size_t i = 0; i < ns.size(); ++i) CHECK(fs[i].eval(x) == want[i]);
            }
          }
      }
  }

  TEST_CASE("denominator ledger and reduction") {
    for (const char* k : kStates) {
      InitialState st = make(k, 6);
      for (const GaussRat& q : {GaussRat(2), GaussRat::parse("3/5+4/5i")}) {
        AmplitudeResult r = loschmidt_exact(st, CircuitParams::exact(q, 6, st.M), 5);
        DensePoly d = DensePoly({-1, 0, 0, 0, q * q});
        DensePoly bound = d.pow(r.denominator.ledger_K);
        CHECK(DensePoly::divmod(bound, r.reduced.den()).second.is_zero());
        CHECK(poly_gcd(r.reduced.num(), r.reduced.den()).degree() == 0);
        CHECK(r.reduced.den().lead() == GaussRat(1));
        CHECK(r.reduced.num() == r.normalized_numerator.scaled(r.unit));
      }
    }
  }

  TEST_CASE("crosscap sectors add up") {
    InitialState cc = make("crosscap", 6);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 6);
    RationalFn total = loschmidt_exact(cc, p, 4).reduced;
    std::vector<RationalFn> parts;
    for (const auto& [m, v] : cc.sectors) {
      InitialState one = cc;
      one.sectors = {{m, v}};
      parts.push_back(loschmidt_exact(one, p, 4).reduced);
    }
    std::mt19937_64 rng(32);
    for (int t = 0; t < 5; ++t) {
      GaussRat x = random_point(rng);
      GaussRat s(0);
      for (const auto& f : parts) s += f.eval(x);
      CHECK(s == total.eval(x));
    }
  }

  TEST_CASE("numeric amplitude") {
    mp::ScopedPrecision prec(60);
    InitialState st = make("dw", 6);
    CircuitParams p = CircuitParams::exact(GaussRat(2), 6, 3);
    std::mt19937_64 rng(33);
    for (Projection proj : {Projection::none, Projection::zero_momentum})
      for (unsigned n : {1u, 4u}) {
        RationalFn f = loschmidt_exact(st, p, n, proj).reduced;
        GaussRat x = random_point(rng);
        mp::Complex want = mp::to_complex(f.eval(x));
        mp::Complex got = loschmidt_numeric(st, p, mp::to_complex(x), n, proj);
        CHECK(abs(got - want) <= mp::Real(1e-50) * abs(want));
      }
    // unitary bound on |x| = 1
    for (unsigned n : {1u, 7u, 20u}) {
      mp::Complex v = loschmidt_numeric(st, p, mp::make_complex(0.6, 0.8), n);
      CHECK(abs(v) <= mp::Real(st.norm2()) + mp::Real(1e-40));
    }
    CHECK_THROWS_AS(loschmidt_numeric(st, p, mp::Complex(boost::multiprecision::sqrt(mp::Real(1) / 2)), 1), Error);
  }

  TEST_CASE("errors") {
    InitialState st = make("dw", 4);
    mp::ScopedPrecision prec(30);
    CHECK_THROWS_AS(loschmidt_exact(st, CircuitParams::floating(mp::make_complex(2, 0), 4, 2), 1), Error);
    CHECK_THROWS_AS(loschmidt_exact(st, CircuitParams::exact(GaussRat(2), 6, 2), 1), Error);
    AmplitudeResult empty;
    CHECK_THROWS_AS(numerator_for_zeros(empty), Error);
    CHECK(parse_projection("zero-momentum") == Projection::zero_momentum);
    CHECK_THROWS_AS(parse_projection("momentum"), Error);
  }
}
