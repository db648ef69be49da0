#include "raman/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "raman/errors.hpp"
#include "raman/phase.hpp"

namespace raman {

CoefficientSet eval_coefficients(const RamanParams& p, double t) {
  const auto w = p.frequencies();
  const double g = p.g, chi = p.chi, d1 = p.dw1, d2 = p.dw2;
  const cplx ea = std::polar(1.0, -w[0] * t);
  const cplx eb = std::polar(1.0, -w[1] * t);
  const cplx ec = std::polar(1.0, -w[2] * t);
  const cplx ed = std::polar(1.0, -w[3] * t);

  auto P = [t](double delta, int s) { return phase_integral(delta, t, s); };
  auto D = [t](int s, double x0, double x1, double x2) { return phase_dd2(s, x0, x1, x2, t); };

  CoefficientSet k;
  k.t = t;

  const cplx sec_m1 = D(-1, 0.0, 0.0, d1);  // g^2 secular pieces
  const cplx sec_p1 = D(+1, 0.0, 0.0, d1);
  const cplx sec_p2 = D(+1, 0.0, 0.0, d2);  // chi^2 secular pieces
  const cplx sec_m2 = D(-1, 0.0, 0.0, d2);

  k.fs[0] = ea;
  k.fs[1] = g * ea * P(d1, -1);
  k.fs[2] = -chi * ea * P(d2, +1);
  k.fs[3] = -chi * g * ea * (D(-1, 0.0, -d2, d1 - d2) - D(-1, 0.0, d1, d1 - d2));
  k.fs[4] = g * g * ea * sec_m1;
  k.fs[5] = k.fs[4];
  k.fs[6] = chi * chi * ea * sec_p2;
  k.fs[7] = -k.fs[6];

  k.gs[0] = eb;
  k.gs[1] = -g * eb * P(d1, +1);
  k.gs[2] = -chi * g * eb * D(+1, 0.0, d1, d1 - d2);
  k.gs[3] = chi * g * eb * D(+1, 0.0, d1, d1 + d2);
  k.gs[4] = g * g * eb * sec_p1;
  k.gs[5] = -k.gs[4];

  k.hs[0] = ec;
  k.hs[1] = -g * ec * P(d1, +1);
  k.hs[2] = -chi * ec * P(d2, +1);
  k.hs[3] = chi * g * ec * (D(+1, 0.0, d1, d1 + d2) - D(+1, 0.0, d2, d1 + d2));
  k.hs[4] = -g * g * ec * sec_p1;
  k.hs[5] = -k.hs[4];
  k.hs[6] = -chi * chi * ec * sec_p2;
  k.hs[7] = -k.hs[6];

  k.ls[0] = ed;
  k.ls[1] = chi * ed * P(d2, -1);
  k.ls[2] = chi * g * ed * D(+1, 0.0, -d2, d1 - d2);
  k.ls[3] = chi * g * ed * D(-1, 0.0, d2, d1 + d2);
  k.ls[4] = chi * chi * ed * sec_m2;
  k.ls[5] = k.ls[4];
  return k;
}

std::array<cplx, 4> first_moments(const CoefficientSet& k, const CoherentAmplitudes& amps) {
  const cplx A = amps.alpha1, B = amps.alpha2, C = amps.alpha3, D = amps.alpha4;
  const double nA = std::norm(A), nB = std::norm(B), nC = std::norm(C), nD = std::norm(D);
  using std::conj;
  std::array<cplx, 4> out;
  out[0] = k.f(1) * A + k.f(2) * B * C + k.f(3) * conj(C) * D + k.f(4) * conj(A) * B * D +
           k.f(5) * A * (nB + 1.0) + (k.f(6) + k.f(7)) * A * nC + k.f(8) * A * nD;
  out[1] = k.g(1) * B + k.g(2) * A * conj(C) + k.g(3) * A * A * conj(D) +
           k.g(4) * conj(C) * conj(C) * D + k.g(5) * B * (nC + 1.0) + k.g(6) * B * (nA + 1.0);
  out[2] = k.h(1) * C + k.h(2) * A * conj(B) + k.h(3) * conj(A) * D +
           k.h(4) * conj(B) * conj(C) * D + k.h(5) * C * (nA + 1.0) + k.h(6) * C * (nB + 1.0) +
           k.h(7) * C * nD + k.h(8) * C * nA;
  out[3] = k.l(1) * D + k.l(2) * A * C + k.l(3) * A * A * conj(B) + k.l(4) * B * C * C +
           k.l(5) * nC * D + k.l(6) * (nA + 1.0) * D;
  return out;
}

double ResidualReport::max_residual() const {
  return *std::max_element(residual.begin(), residual.end());
}

ResidualReport verify_order2_consistency(const RamanParams& p, const CoherentAmplitudes& amps,
                                         double t, const MomentTable& oracle_moments) {
  ResidualReport r;
  r.t = t;
  r.perturbative = first_moments(eval_coefficients(p, t), amps);
  for (int x = 0; x < 4; ++x) {
    const Mode mode = static_cast<Mode>(x);
    const MomentKey key = MomentKey::make({{mode, {0, 1}}});
    auto it = oracle_moments.find(key);
    if (it == oracle_moments.end())
      throw IncompleteInputError("missing oracle moment " + key.to_string());
    r.oracle[x] = it->second;
    r.residual[x] = std::abs(r.perturbative[x] - r.oracle[x]);
  }
  return r;
}

}  // namespace raman
