#pragma once

#include <memory>
#include <vector>

#include "raman/core.hpp"
#include "raman/fock.hpp"
#include "raman/kernels.hpp"
#include "raman/witnesses.hpp"

namespace raman {

// Bare frequencies used by the oracle: omega from params when given, else
// omega_b = omega_c = 1, omega_a = 2 - dw1, omega_d = omega_a + 1 - dw2.
std::array<double, 4> oracle_frequencies(const RamanParams& p);
RamanParams with_oracle_frequencies(const RamanParams& p);

struct Hamiltonian {
  std::shared_ptr<const FockBasis> basis;
  CsrMatrix matrix;
};

// ResourceError when the basis exceeds the configured cap.
Hamiltonian build_hamiltonian(const RamanParams& p, const FockConfig& cfg);

struct OracleState {
  std::shared_ptr<const FockBasis> basis;
  std::vector<cplx> amplitudes;
  double t = 0.0;

  double norm() const;
};

// Smallest cutoff whose coherent tail mass sum_{n > c} e^{-|z|^2}|z|^{2n}/n! is below tol.
int required_cutoff(cplx z, double tol);
double coherent_tail_mass(cplx z, int cutoff);

// TruncationError when a mode's tail mass is not below leak_tol.
OracleState coherent_product_state(const CoherentAmplitudes& amps, const FockConfig& cfg);

struct EvolveOptions {
  double tol = 1e-10;
  int krylov_dim = 30;
  int max_steps = 100000;
  Backend backend = Backend::openmp;
};

struct EvolveStats {
  int steps = 0;
  int matvecs = 0;
  double max_step_error = 0.0;
  double norm_drift = 0.0;  // |norm - 1| after the last step
};

// exp(-i H (t - state.t)) |state>, adaptive Lanczos steps. NumericalError on failure.
OracleState evolve(const OracleState& state, const Hamiltonian& H, double t,
                   const EvolveOptions& opt = {}, EvolveStats* stats = nullptr);

// <psi| prod_x (x+)^p_x x^q_x |psi>. TruncationError when a power exceeds its cutoff.
cplx normal_ordered_moment(const OracleState& s, const MomentKey& key);
MomentTable collect_moments(const OracleState& s, const std::vector<MomentKey>& keys);

// Probability on basis states with some occupation at its cutoff.
double top_level_probability(const OracleState& s);
// Same, per mode: probability that mode x sits at its own cutoff.
std::array<double, 4> top_level_by_mode(const OracleState& s);

struct Conserved {
  double n_abd = 0.0;  // <Na + Nb + Nd>
  double n_acd = 0.0;  // <Na + Nc + 2 Nd>
  double energy = 0.0; // <H>
};
Conserved conserved_quantities(const OracleState& s, const Hamiltonian& H);

struct OracleDiagnostics {
  double max_norm_drift = 0.0;
  double max_rel_drift_abd = 0.0;
  double max_rel_drift_acd = 0.0;
  double max_rel_drift_energy = 0.0;
  double max_top_level = 0.0;
  std::array<double, 4> max_top_level_mode{};
  double leak_tol = 0.0;
  EvolveStats evolve;

  bool truncation_ok() const { return max_top_level < leak_tol; }
  // TruncationError with the measured probability when the monitor is breached.
  void require_valid() const;
  // One more level for every mode whose own top level reaches leak_tol / 4.
  std::array<int, 4> suggested_cutoffs(const std::array<int, 4>& current) const;
};

struct OracleSweep {
  std::vector<WitnessSeries> series;  // one per spec, times in gt
  std::vector<MomentTable> first_moments;  // <a>..<d> per grid time
  OracleDiagnostics diagnostics;
};

// Evolves once per grid time (gt units, ascending) and evaluates every spec from
// the same state. Params are used as given; times are converted with 1/g.
OracleSweep oracle_witness_sweep(const RamanParams& p, const CoherentAmplitudes& amps,
                                 const FockConfig& cfg, const std::vector<double>& gt_grid,
                                 const std::vector<WitnessSpec>& specs,
                                 const EvolveOptions& opt = {});

struct ValidationRow {
  WitnessSpec spec;
  double gt = 0.0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double order = 0.0;  // from the previous row of the same spec; NaN on the first
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  OracleDiagnostics diagnostics;
  // Order estimated from the two largest grid times of `spec`.
  double order(const WitnessSpec& spec) const;
};

ValidationReport oracle_validate(const RamanParams& p, const CoherentAmplitudes& amps,
                                 const FockConfig& cfg, const std::vector<double>& gt_grid,
                                 const std::vector<WitnessSpec>& specs,
                                 const EvolveOptions& opt = {});

}  // namespace raman
