#pragma once

#include <vector>

#include "raman/coefficients.hpp"
#include "raman/core.hpp"
#include "raman/errors.hpp"

namespace raman {

struct WitnessValue {
  WitnessSpec spec;
  double t = 0.0;
  double value = 0.0;
  double residual_imag = 0.0;
  bool real_ok() const;  // residual_imag < 1e-9 max(1, |value|)
};

WitnessValue pairwise_witness(const WitnessSpec& spec, const CoefficientSet& k,
                              const CoherentAmplitudes& amps);
WitnessValue three_mode_witness(const CoefficientSet& k, const CoherentAmplitudes& amps);
WitnessValue four_mode_witness(const CoefficientSet& k, const CoherentAmplitudes& amps);
// Dispatch on spec.criterion.
WitnessValue evaluate_witness(const WitnessSpec& spec, const CoefficientSet& k,
                              const CoherentAmplitudes& amps);

// Normal-ordered expectations the definition of `spec` reads.
std::vector<MomentKey> required_moments(const WitnessSpec& spec);

// Witness definition evaluated on moments of scalar type S. `moment(key)`
// returns the expectation for a MomentKey.
template <class S, class Lookup>
S witness_definition(const WitnessSpec& spec, Lookup&& moment) {
  using std::conj;
  const auto keys = required_moments(spec);
  switch (spec.criterion) {
    case Criterion::hz1: {
      const S joint = moment(keys[0]);
      const S cross = moment(keys[1]);
      return joint - cross * conj(cross);
    }
    case Criterion::hz2: {
      const S ni = moment(keys[0]);
      const S nj = moment(keys[1]);
      const S cross = moment(keys[2]);
      return ni * nj - cross * conj(cross);
    }
    case Criterion::three_mode:
    case Criterion::four_mode: {
      const std::size_t k = keys.size() - 1;
      S prod = moment(keys[0]);
      for (std::size_t i = 1; i < k; ++i) prod = prod * moment(keys[i]);
      const S cross = moment(keys[k]);
      return prod - cross * conj(cross);
    }
  }
  throw SpecError("unknown criterion", "criterion");
}

// Throws IncompleteInputError naming the first missing entry.
WitnessValue witness_from_moments(const WitnessSpec& spec, const MomentTable& moments,
                                  double t = 0.0);

}  // namespace raman
