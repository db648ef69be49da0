#include "raman/witnesses.hpp"

#include <cmath>

namespace raman {

namespace {

using std::conj;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Accumulates real terms and conjugate-paired terms, keeping the imaginary
// residue visible instead of taking real parts early.
struct Accum {
  cplx total{};
  void real_term(cplx x) { total += x; }
  void plus_cc(cplx x) { total += x + conj(x); }
  void minus_cc(cplx x) { total -= x + conj(x); }
};

WitnessValue finish(const WitnessSpec& spec, double t, const Accum& acc) {
  return {spec, t, acc.total.real(), std::abs(acc.total.imag())};
}

struct Amps {
  cplx A, B, C, D;
  double a1, a2, a3, a4;  // moduli
  explicit Amps(const CoherentAmplitudes& x)
      : A(x.alpha1), B(x.alpha2), C(x.alpha3), D(x.alpha4),
        a1(std::abs(A)), a2(std::abs(B)), a3(std::abs(C)), a4(std::abs(D)) {}
};

// Upper sign (s = +1) is HZ-1, lower (s = -1) HZ-2.
Accum pair_ab(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  const double f2 = std::norm(k.f(2)), f3 = std::norm(k.f(3));
  acc.real_term(f2 * m *
                (m * ipow(z.a1, 2 * (n + 1)) * ipow(z.a2, 2 * (m - 1)) -
                 s * n * ipow(z.a1, 2 * n) * ipow(z.a2, 2 * m)));
  acc.real_term(f3 * n * n * ipow(z.a1, 2 * (n - 1)) * ipow(z.a2, 2 * m) * z.a4 * z.a4);
  return acc;
}

Accum pair_bc(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  const double a1s = z.a1 * z.a1, a2s = z.a2 * z.a2, a3s = z.a3 * z.a3, a4s = z.a4 * z.a4;
  const double pb = ipow(z.a2, 2 * (n - 1)), pc = ipow(z.a3, 2 * (m - 1));
  acc.real_term(std::norm(k.g(2)) * pb * pc *
                (n * n * (1 + s * 2 * m) * a1s * a3s + m * m * (1 + s * 2 * n) * a1s * a2s +
                 s * m * m * n * n * a1s - s * m * n * a2s * a3s));
  acc.real_term(std::norm(k.h(3)) * m * m * ipow(z.a2, 2 * n) * pc * a4s);

  cplx x = k.g(1) * conj(k.g(2)) * double(m * n) * pb * pc * conj(z.A) * z.B * z.C;
  if (n > 1 || m > 1) {
    double brace = 0.0;
    if (n > 1 && m > 1) brace += 0.5 * (m - 1) * (n - 1) * ipow(z.a2, 2 * (n - 2)) * ipow(z.a3, 2 * (m - 2));
    if (m > 1) brace += (m - 1) * pb * ipow(z.a3, 2 * (m - 2));
    if (n > 1) brace += (n - 1) * ipow(z.a2, 2 * (n - 2)) * pc;
    x += k.g(1) * k.g(1) * conj(k.g(2)) * conj(k.g(2)) * double(m * n) * conj(z.A) * conj(z.A) *
         z.B * z.B * z.C * z.C * brace;
  }
  x += k.h(2) * conj(k.h(3)) * double(m * m * n) * z.A * z.A * conj(z.B) * conj(z.D) * pb * pc;
  {
    double brace = 2.0 * pc;
    if (m > 1) brace += (m - 1) * ipow(z.a3, 2 * (m - 2));
    x += k.g(1) * conj(k.g(4)) * double(m * n) * pb * z.B * z.C * z.C * conj(z.D) * brace;
  }
  if (m > 1)
    x += conj(k.h(1)) * conj(k.h(1)) * k.h(2) * k.h(3) * double(m * n * (m - 1)) * a1s * pb *
         ipow(z.a3, 2 * (m - 2)) * conj(z.B) * conj(z.C) * conj(z.C) * z.D;
  if (s > 0) acc.plus_cc(x);
  else acc.minus_cc(x);
  return acc;
}

Accum pair_ac(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  const double a1s = z.a1 * z.a1, a3s = z.a3 * z.a3, a4s = z.a4 * z.a4;
  const double pa = ipow(z.a1, 2 * (n - 1)), pc = ipow(z.a3, 2 * (m - 1));
  acc.real_term(std::norm(k.f(2)) * m * ipow(z.a1, 2 * n) * pc * (m * a1s - s * n * a3s));
  acc.real_term(std::norm(k.f(3)) * pa * pc *
                (m * m * (1 + s * 2 * n) * a1s * a4s + n * n * (1 + s * 2 * m) * a3s * a4s -
                 s * m * n * a1s * a3s + s * m * m * n * n * a4s));

  cplx x = k.f(1) * conj(k.f(3)) * double(m * n) * pa * z.A * pc * z.C * conj(z.D);
  x += conj(k.h(2)) * k.h(3) * double(m * m * n) * conj(z.A) * conj(z.A) * pa * z.B * pc * z.D;
  x += k.f(2) * conj(k.f(3)) * double(m * n * n) * pa * z.B * pc * z.C * z.C * conj(z.D);
  if (n > 1 || m > 1) {
    double brace = 0.0;
    if (n > 1) brace += (n - 1) * ipow(z.a1, 2 * (n - 2)) * pc;
    if (m > 1) brace += (m - 1) * pa * ipow(z.a3, 2 * (m - 2));
    if (n > 1 && m > 1) brace += 0.5 * (m - 1) * (n - 1) * ipow(z.a1, 2 * (n - 2)) * ipow(z.a3, 2 * (m - 2));
    x += conj(k.f(1)) * conj(k.f(1)) * k.f(3) * k.f(3) * double(m * n) * conj(z.A) * conj(z.A) *
         conj(z.C) * conj(z.C) * z.D * z.D * brace;
  }
  if (n > 1)
    x += conj(k.f(1)) * k.f(2) * conj(k.h(1)) * k.h(3) * double(m * n * (n - 1)) * conj(z.A) *
         conj(z.A) * ipow(z.a1, 2 * (n - 2)) * z.B * ipow(z.a3, 2 * m) * z.D;
  if (m > 1)
    x += k.f(1) * conj(k.f(3)) * k.h(1) * conj(k.h(2)) * double(m * n * (m - 1)) *
         ipow(z.a1, 2 * n) * z.B * ipow(z.a3, 2 * (m - 2)) * z.C * z.C * conj(z.D);
  if (s > 0) acc.plus_cc(x);
  else acc.minus_cc(x);
  return acc;
}

Accum pair_ad(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  acc.real_term(std::norm(k.f(3)) * n * ipow(z.a1, 2 * (n - 1)) * ipow(z.a4, 2 * m) *
                (n * z.a4 * z.a4 - s * m * z.a1 * z.a1));
  return acc;
}

Accum pair_cd(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  const double pc = ipow(z.a3, 2 * (n - 1)), pd = ipow(z.a4, 2 * m);
  acc.real_term(std::norm(k.h(2)) * n * n * z.a1 * z.a1 * pc * pd);
  acc.real_term(std::norm(k.l(2)) * pc * pd *
                (n * n * z.a4 * z.a4 - s * m * n * z.a3 * z.a3));
  return acc;
}

Accum pair_bd(const CoefficientSet& k, const Amps& z, int n, int m, double s) {
  Accum acc;
  acc.real_term(std::norm(k.g(2)) * n * n * z.a1 * z.a1 * ipow(z.a2, 2 * (n - 1)) *
                ipow(z.a4, 2 * m));
  const cplx x = conj(k.l(1)) * k.l(3) * double(m * n) * z.A * z.A * conj(z.B) *
                 ipow(z.a2, 2 * (n - 1)) * conj(z.D) * ipow(z.a4, 2 * (m - 1));
  if (s > 0) acc.plus_cc(x);
  else acc.minus_cc(x);
  return acc;
}

}  // namespace

bool WitnessValue::real_ok() const {
  return residual_imag < 1e-9 * std::max(1.0, std::abs(value));
}

WitnessValue pairwise_witness(const WitnessSpec& spec, const CoefficientSet& k,
                              const CoherentAmplitudes& amps) {
  spec.validate();
  if (!spec.is_pairwise()) throw SpecError("pairwise_witness needs hz1 or hz2", "criterion");
  const Amps z(amps);
  const double s = spec.criterion == Criterion::hz1 ? 1.0 : -1.0;
  Accum acc;
  switch (spec.pair()) {
    case Pair::ab: acc = pair_ab(k, z, spec.n, spec.m, s); break;
    case Pair::bc: acc = pair_bc(k, z, spec.n, spec.m, s); break;
    case Pair::ac: acc = pair_ac(k, z, spec.n, spec.m, s); break;
    case Pair::ad: acc = pair_ad(k, z, spec.n, spec.m, s); break;
    case Pair::cd: acc = pair_cd(k, z, spec.n, spec.m, s); break;
    case Pair::bd: acc = pair_bd(k, z, spec.n, spec.m, s); break;
  }
  return finish(spec, k.t, acc);
}

WitnessValue three_mode_witness(const CoefficientSet& k, const CoherentAmplitudes& amps) {
  const Amps z(amps);
  const cplx A = z.A, B = z.B, C = z.C, D = z.D;
  const double nA = z.a1 * z.a1, nB = z.a2 * z.a2, nC = z.a3 * z.a3, nD = z.a4 * z.a4;
  const cplx f1 = k.f(1), f2 = k.f(2), f3 = k.f(3);
  const cplx g1 = k.g(1), g2 = k.g(2), g6 = k.g(6);
  const cplx h1 = k.h(1), h2 = k.h(2), h3 = k.h(3), h4 = k.h(4), h5 = k.h(5), h6 = k.h(6),
             h8 = k.h(8);

  Accum acc;
  acc.real_term(std::norm(f3) * nB * nC * nD + std::norm(g2) * nA * nA * nC -
                std::norm(h2) * nA * nA - std::norm(h2) * nA * nA * nB -
                std::norm(h3) * nB * nD - std::norm(h3) * nA * nB * nD);

  cplx x = (f1 * conj(f2) * g1 * conj(g2) + 2.0 * f1 * conj(f2) * h1 * conj(h2) + g1 * conj(g6) +
            h1 * conj(h5) + h1 * conj(h6) + h1 * conj(h8)) * nA * nB * nC;
  x += f1 * conj(f2) * conj(h1) * h2 * A * A * conj(B) * conj(B) * conj(C) * conj(C);
  x += f1 * conj(f2) * conj(h1) * h3 * nB * conj(B) * conj(C) * conj(C) * D;
  x += f1 * conj(f3) * h1 * conj(h2) * nA * B * C * C * conj(D);
  x += f1 * conj(f3) * conj(h1) * h2 * A * A * conj(B) * nC * conj(D);
  x += f1 * conj(f3) * conj(h1) * h3 * nB * nC * nD;
  x += 2.0 * g1 * conj(g2) * h1 * conj(h3) * nA * B * C * C * conj(D);
  x += g1 * conj(g2) * conj(h1) * h2 * nA * nA * nC;
  x += g1 * conj(g2) * conj(h1) * h3 * conj(A) * conj(A) * B * nC * D;
  x += h1 * conj(h2) * nA * conj(A) * B * C;
  x += h1 * conj(h3) * A * nB * C * conj(D);
  x += h1 * conj(h4) * nA * B * C * C * conj(D);
  x += h2 * conj(h3) * A * A * conj(B) * conj(D) * (1.0 + nB + nA);
  acc.minus_cc(x);
  return finish(WitnessSpec::three_mode(), k.t, acc);
}

WitnessValue four_mode_witness(const CoefficientSet& k, const CoherentAmplitudes& amps) {
  const Amps z(amps);
  const cplx A = z.A, B = z.B, C = z.C, D = z.D;
  const double nA = z.a1 * z.a1, nB = z.a2 * z.a2, nC = z.a3 * z.a3, nD = z.a4 * z.a4;
  const cplx f1 = k.f(1), f2 = k.f(2), f3 = k.f(3);
  const cplx g1 = k.g(1), g2 = k.g(2), g6 = k.g(6);
  const cplx h1 = k.h(1), h2 = k.h(2), h3 = k.h(3), h4 = k.h(4), h5 = k.h(5), h6 = k.h(6),
             h8 = k.h(8);
  const cplx l1 = k.l(1), l2 = k.l(2), l3 = k.l(3), l5 = k.l(5), l6 = k.l(6);

  Accum acc;
  acc.real_term(std::norm(f3) * nB * nC * nD * nD + std::norm(g2) * nA * nA * nC * nD -
                std::norm(h2) * nA * nA * nD - std::norm(h2) * nA * nA * nB * nD -
                std::norm(h3) * nB * nD * nD - std::norm(h3) * nA * nB * nD * nD);

  cplx x = (f1 * conj(f2) * g1 * conj(g2) + 2.0 * f1 * conj(f2) * h1 * conj(h2) + g1 * conj(g6) +
            h1 * conj(h3) * l1 * conj(l2) + h1 * conj(h5) + h1 * conj(h6) + h1 * conj(h8) +
            l1 * conj(l5) + l1 * conj(l6)) * nA * nB * nC * nD;
  x += f1 * conj(f2) * conj(h1) * h2 * A * A * conj(B) * conj(B) * conj(C) * conj(C) * nD;
  x += f1 * conj(f2) * conj(h1) * h3 * nB * conj(B) * conj(C) * conj(C) * nD * D;
  x += f1 * conj(f3) * h1 * conj(h2) * nA * B * C * C * nD * conj(D);
  x += f1 * conj(f3) * conj(h1) * h2 * A * A * conj(B) * nC * nD * conj(D);
  x += f1 * conj(f3) * conj(h1) * h3 * nB * nC * nD * nD;
  x += 2.0 * g1 * conj(g2) * h1 * conj(h3) * nA * B * C * C * nD * conj(D);
  x += g1 * conj(g2) * conj(h1) * h2 * nA * nA * nC * nD;
  x += g1 * conj(g2) * conj(h1) * h3 * conj(A) * conj(A) * B * nC * nD * D;
  x += h1 * conj(h2) * nA * conj(A) * B * C * nD;
  x += h1 * conj(h2) * l1 * conj(l2) * nA * conj(A) * conj(A) * B * nC * D;
  x += h1 * conj(h2) * conj(l1) * l2 * nA * nA * B * C * C * conj(D);
  x += h1 * conj(h3) * A * nB * C * nD * conj(D);
  x += h1 * conj(h3) * conj(l1) * l2 * A * A * nB * C * C * conj(D) * conj(D);
  x += h1 * conj(h4) * nA * B * C * C * nD * conj(D);
  x += h2 * conj(h3) * A * A * conj(B) * nD * conj(D) * (1.0 + nB + nA);
  x += l1 * conj(l3) * nA * conj(A) * conj(A) * B * nC * D;
  acc.minus_cc(x);
  return finish(WitnessSpec::four_mode(), k.t, acc);
}

WitnessValue evaluate_witness(const WitnessSpec& spec, const CoefficientSet& k,
                              const CoherentAmplitudes& amps) {
  switch (spec.criterion) {
    case Criterion::hz1:
    case Criterion::hz2: return pairwise_witness(spec, k, amps);
    case Criterion::three_mode: spec.validate(); return three_mode_witness(k, amps);
    case Criterion::four_mode: spec.validate(); return four_mode_witness(k, amps);
  }
  throw SpecError("unknown criterion", "criterion");
}

std::vector<MomentKey> required_moments(const WitnessSpec& spec) {
  spec.validate();
  auto mono = [](std::initializer_list<std::pair<Mode, std::pair<int, int>>> e) {
    return MomentKey::make(e);
  };
  switch (spec.criterion) {
    case Criterion::hz1: {
      const Mode i = spec.modes[0], j = spec.modes[1];
      const int n = spec.n, m = spec.m;
      return {mono({{i, {n, n}}, {j, {m, m}}}), mono({{i, {0, n}}, {j, {m, 0}}})};
    }
    case Criterion::hz2: {
      const Mode i = spec.modes[0], j = spec.modes[1];
      const int n = spec.n, m = spec.m;
      return {mono({{i, {n, n}}}), mono({{j, {m, m}}}), mono({{i, {0, n}}, {j, {0, m}}})};
    }
    case Criterion::three_mode:
    case Criterion::four_mode: {
      std::vector<MomentKey> keys;
      MomentKey cross;
      for (Mode x : spec.modes) {
        keys.push_back(mono({{x, {1, 1}}}));
        cross.powers[2 * static_cast<int>(x) + 1] = 1;
      }
      keys.push_back(cross);
      return keys;
    }
  }
  return {};
}

WitnessValue witness_from_moments(const WitnessSpec& spec, const MomentTable& moments, double t) {
  auto lookup = [&](const MomentKey& key) -> cplx {
    auto it = moments.find(key);
    if (it == moments.end())
      throw IncompleteInputError("missing moment " + key.to_string() + " for " + spec.to_string());
    return it->second;
  };
  const cplx v = witness_definition<cplx>(spec, lookup);
  return {spec, t, v.real(), std::abs(v.imag())};
}

}  // namespace raman
