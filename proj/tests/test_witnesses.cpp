#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "raman/witnesses.hpp"
#include "support/normal_order.hpp"

using namespace raman;
using raman::testing::Jet;

namespace {

std::vector<WitnessSpec> all_specs(int max_order) {
  std::vector<WitnessSpec> out;
  for (Criterion c : {Criterion::hz1, Criterion::hz2})
    for (Pair p : kAllPairs)
      for (int n = 1; n < max_order; ++n)
        for (int m = 1; n + m <= max_order; ++m) out.push_back(WitnessSpec::pairwise(c, p, n, m));
  out.push_back(WitnessSpec::three_mode());
  out.push_back(WitnessSpec::four_mode());
  return out;
}

double jet_witness(const WitnessSpec& spec, const CoefficientSet& k, const CoherentAmplitudes& amps) {
  auto lookup = [&](const MomentKey& key) { return raman::testing::moment_jet(key, k, amps); };
  return witness_definition<Jet>(spec, lookup).sum().real();
}

CoherentAmplitudes random_amps(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  CoherentAmplitudes a;
  a.alpha1 = scale * cplx(U(rng), U(rng));
  a.alpha2 = scale * cplx(U(rng), U(rng));
  a.alpha3 = scale * cplx(U(rng), U(rng));
  a.alpha4 = scale * cplx(U(rng), U(rng));
  return a;
}

}  // namespace

TEST_CASE("closed forms equal the second-order definition on random points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const auto specs = all_specs(6);
  for (int trial = 0; trial < 20; ++trial) {
    RamanParams p{1.0, 1.0 + 0.5 * U(rng), 10.0 * U(rng), 19.0 * U(rng), {}};
    p.omega = std::array<double, 4>{U(rng), 1.0 + U(rng), 1.0 + U(rng), 0.0};
    (*p.omega)[1] = (*p.omega)[0] + p.dw1 - (*p.omega)[2];
    (*p.omega)[3] = (*p.omega)[0] + (*p.omega)[2] - p.dw2;
    const double t = 0.05 + 0.1 * std::abs(U(rng));
    const auto k = eval_coefficients(p, t);
    const auto amps = random_amps(rng, 0.6);
    for (const auto& spec : specs) {
      const auto closed = evaluate_witness(spec, k, amps);
      const double ref = jet_witness(spec, k, amps);
      INFO(spec.to_string(), " trial ", trial);
      CHECK(std::abs(closed.value - ref) < 1e-10);
      CHECK(closed.real_ok());
    }
  }
}

TEST_CASE("ad pair signs") {
  const auto s = make_scenario(Preset::stimulated);
  for (double gt : {0.01, 0.05, 0.1}) {
    const auto k = eval_coefficients(s.params, gt / s.params.g);
    const double f3 = std::norm(k.f(3));
    const auto e1 = pairwise_witness(WitnessSpec::parse("hz1:ad:1,1"), k, s.amps);
    const auto e2 = pairwise_witness(WitnessSpec::parse("hz2:ad:1,1"), k, s.amps);
    CHECK(e1.value == doctest::Approx(-99.0 * f3).epsilon(1e-12));
    CHECK(e1.value < 0.0);
    CHECK(e2.value == doctest::Approx(101.0 * f3).epsilon(1e-12));
  }
}

TEST_CASE("ab higher order is negative at gt = 0.05") {
  const auto s = make_scenario(Preset::stimulated);
  const auto k = eval_coefficients(s.params, 0.05 / s.params.g);
  CHECK(pairwise_witness(WitnessSpec::parse("hz1:ab:2,1"), k, s.amps).value < 0.0);
}

TEST_CASE("zero at t = 0 and spontaneous laws") {
  const auto st = make_scenario(Preset::stimulated);
  const auto sp = make_scenario(Preset::spontaneous, {{"phi", 0.7}});
  const auto k0 = eval_coefficients(st.params, 0.0);
  for (const auto& spec : all_specs(6)) {
    CHECK(evaluate_witness(spec, k0, st.amps).value == 0.0);
    CHECK(evaluate_witness(spec, k0, sp.amps).value == 0.0);
  }
  for (double gt : {0.003, 0.04, 0.1}) {
    const auto k = eval_coefficients(st.params, gt / st.params.g);
    // Only the terms free of alpha2..alpha4 survive: m = 1 for ab and ac, n = m = 1 for bc.
    const double a1s = std::norm(sp.amps.alpha1);
    for (const auto& spec : all_specs(6)) {
      if (!spec.is_pairwise()) continue;
      const double v = evaluate_witness(spec, k, sp.amps).value;
      const double sgn = spec.criterion == Criterion::hz1 ? 1.0 : -1.0;
      double expect = 0.0;
      if ((spec.pair() == Pair::ab || spec.pair() == Pair::ac) && spec.m == 1)
        expect = std::norm(k.f(2)) * std::pow(a1s, spec.n + 1);
      if (spec.pair() == Pair::bc && spec.n == 1 && spec.m == 1) expect = sgn * std::norm(k.g(2)) * a1s;
      INFO(spec.to_string());
      CHECK(std::abs(v - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
      CHECK(std::abs(jet_witness(spec, k, sp.amps) - v) <= 1e-10 * std::max(1.0, std::abs(v)));
    }
    const double e3 = three_mode_witness(k, sp.amps).value;
    const double law = -std::norm(k.f(2)) * std::pow(std::abs(sp.amps.alpha1), 4);
    CHECK(e3 < 0.0);
    CHECK(std::abs(e3 - law) <= 1e-12 * std::abs(law));
    CHECK(four_mode_witness(k, sp.amps).value == 0.0);
  }
}

TEST_CASE("four-mode partial spontaneous is negative") {
  const auto s = make_scenario(Preset::partial_spontaneous);
  const auto k = eval_coefficients(s.params, 0.05 / s.params.g);
  const auto v = four_mode_witness(k, s.amps);
  CHECK(v.value < 0.0);
  CHECK(v.value == doctest::Approx(-std::norm(k.h(2)) * 1e4).epsilon(1e-12));
}

TEST_CASE("phase-free closed forms ignore phi") {
  const auto s = make_scenario(Preset::stimulated);
  const auto k = eval_coefficients(s.params, 0.07 / s.params.g);
  for (const char* text : {"hz1:ad:1,1", "hz2:ad:2,3", "hz1:ab:3,1", "hz2:ab:1,2", "hz1:cd:2,1", "hz2:cd:1,1"}) {
    const auto spec = WitnessSpec::parse(text);
    const double v0 = pairwise_witness(spec, k, s.amps).value;
    for (double d : {0.3, kPi / 2, kPi, 5.0}) {
      const double v = pairwise_witness(spec, k, s.amps.with_phase(d)).value;
      CHECK(std::abs(v - v0) <= 1e-12 * std::max(1.0, std::abs(v0)));
    }
  }
}

TEST_CASE("witness_from_moments") {
  const auto amps = CoherentAmplitudes::from_polar(0.8, 0.4, 0.5, 0.3, 0.2);
  std::mt19937_64 rng(5);
  for (const auto& spec : all_specs(5)) {
    MomentTable coh, vac;
    for (const auto& key : required_moments(spec)) {
      cplx v = 1.0;
      for (int x = 0; x < 4; ++x) {
        const Mode m = static_cast<Mode>(x);
        for (int i = 0; i < key.creation(m); ++i) v *= std::conj(amps[m]);
        for (int i = 0; i < key.annihilation(m); ++i) v *= amps[m];
      }
      coh[key] = v;
      vac[key] = 0.0;
    }
    CHECK(std::abs(witness_from_moments(spec, coh).value) < 1e-14);
    CHECK(witness_from_moments(spec, vac).value == 0.0);
    auto partial = coh;
    partial.erase(partial.begin());
    CHECK_THROWS_AS(witness_from_moments(spec, partial), IncompleteInputError);
  }
}

TEST_CASE("canonical order is enforced") {
  const auto k = eval_coefficients(RamanParams{1.0, 1.0, 10.0, 19.0, {}}, 0.1);
  WitnessSpec bad;
  bad.criterion = Criterion::hz1;
  bad.modes = {Mode::c, Mode::a};
  CHECK_THROWS_AS(pairwise_witness(bad, k, CoherentAmplitudes{}), SpecError);
}
