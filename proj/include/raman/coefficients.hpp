#pragma once

#include <array>

#include "raman/core.hpp"

namespace raman {

// f1..f8, g1..g6, h1..h8, l1..l6 of the second-order operator solution.
// Accessors are 1-based to match the usual numbering.
struct CoefficientSet {
  std::array<cplx, 8> fs{};
  std::array<cplx, 6> gs{};
  std::array<cplx, 8> hs{};
  std::array<cplx, 6> ls{};
  double t = 0.0;

  cplx f(int i) const { return fs[i - 1]; }
  cplx g(int i) const { return gs[i - 1]; }
  cplx h(int i) const { return hs[i - 1]; }
  cplx l(int i) const { return ls[i - 1]; }
};

CoefficientSet eval_coefficients(const RamanParams& p, double t);

// <a(t)>, <b(t)>, <c(t)>, <d(t)> in the initial coherent product state.
std::array<cplx, 4> first_moments(const CoefficientSet& k, const CoherentAmplitudes& amps);

struct ResidualReport {
  double t = 0.0;
  std::array<cplx, 4> perturbative{};
  std::array<cplx, 4> oracle{};
  std::array<double, 4> residual{};
  double max_residual() const;
};

// Needs <a>, <b>, <c>, <d> in `oracle_moments`; throws IncompleteInputError otherwise.
ResidualReport verify_order2_consistency(const RamanParams& p, const CoherentAmplitudes& amps,
                                         double t, const MomentTable& oracle_moments);

}  // namespace raman
