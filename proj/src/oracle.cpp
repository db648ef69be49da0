#include "raman/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "raman/coefficients.hpp"
#include "raman/errors.hpp"

namespace raman {

std::array<double, 4> oracle_frequencies(const RamanParams& p) {
  if (p.omega) return *p.omega;
  const double wb = 1.0, wc = 1.0;
  const double wa = wb + wc - p.dw1;
  const double wd = wa + wc - p.dw2;
  return {wa, wb, wc, wd};
}

RamanParams with_oracle_frequencies(const RamanParams& p) {
  RamanParams out = p;
  out.omega = oracle_frequencies(p);
  return out;
}

namespace {

// Shared by both directions of each transition so H is exactly symmetric.
double stokes_amp(double g, int na, int nb, int nc) {
  // <na-1, nb+1, nc+1| a b+ c+ |na, nb, nc>
  return g * std::sqrt(double(na)) * std::sqrt(double(nb + 1)) * std::sqrt(double(nc + 1));
}

double anti_stokes_amp(double chi, int na, int nc, int nd) {
  // <na-1, nc-1, nd+1| a c d+ |na, nc, nd>
  return chi * std::sqrt(double(na)) * std::sqrt(double(nc)) * std::sqrt(double(nd + 1));
}

}  // namespace

Hamiltonian build_hamiltonian(const RamanParams& p, const FockConfig& cfg) {
  p.validate();
  auto basis = std::make_shared<const FockBasis>(cfg);
  const auto w = oracle_frequencies(p);
  const auto& cut = basis->cutoffs();
  Hamiltonian H;
  H.basis = basis;
  CsrMatrix& M = H.matrix;
  M.rows = basis->size();
  M.row_ptr.assign(M.rows + 1, 0);

  std::vector<std::pair<std::size_t, double>> entries;
  for (std::size_t i = 0; i < M.rows; ++i) {
    const auto& o = basis->occupation(i);
    const int na = o[0], nb = o[1], nc = o[2], nd = o[3];
    entries.clear();
    const double diag = w[0] * na + w[1] * nb + w[2] * nc + w[3] * nd;
    if (diag != 0.0) entries.emplace_back(i, diag);
    if (p.g != 0.0) {
      // a b+ c+
      if (na >= 1 && nb < cut[1] && nc < cut[2])
        entries.emplace_back(basis->index({na - 1, nb + 1, nc + 1, nd}), stokes_amp(p.g, na, nb, nc));
      // a+ b c
      if (na < cut[0] && nb >= 1 && nc >= 1)
        entries.emplace_back(basis->index({na + 1, nb - 1, nc - 1, nd}), stokes_amp(p.g, na + 1, nb - 1, nc - 1));
    }
    if (p.chi != 0.0) {
      // a c d+
      if (na >= 1 && nc >= 1 && nd < cut[3])
        entries.emplace_back(basis->index({na - 1, nb, nc - 1, nd + 1}), anti_stokes_amp(p.chi, na, nc, nd));
      // a+ c+ d
      if (na < cut[0] && nc < cut[2] && nd >= 1)
        entries.emplace_back(basis->index({na + 1, nb, nc + 1, nd - 1}), anti_stokes_amp(p.chi, na + 1, nc + 1, nd - 1));
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [c, v] : entries) {
      M.col.push_back(c);
      M.val.emplace_back(v, 0.0);
    }
    M.row_ptr[i + 1] = M.col.size();
  }
  return H;
}

double OracleState::norm() const {
  return std::sqrt(std::real(dot_serial(amplitudes.data(), amplitudes.data(), amplitudes.size())));
}

double coherent_tail_mass(cplx z, int cutoff) {
  const double x = std::norm(z);
  if (x == 0.0) return 0.0;
  // Sum terms above the cutoff directly so small tails keep full relative precision.
  double log_term = -x + (cutoff + 1) * std::log(x) - std::lgamma(double(cutoff + 2));
  double term = std::exp(log_term), sum = 0.0;
  for (int n = cutoff + 1; n < cutoff + 2000 && term > sum * 1e-17; ++n) {
    sum += term;
    term *= x / double(n + 1);
  }
  return sum;
}

int required_cutoff(cplx z, double tol) {
  int c = 0;
  while (coherent_tail_mass(z, c) >= tol) ++c;
  return c;
}

OracleState coherent_product_state(const CoherentAmplitudes& amps, const FockConfig& cfg) {
  auto basis = std::make_shared<const FockBasis>(cfg);
  const auto al = amps.as_array();
  std::array<std::vector<cplx>, 4> ladders;
  for (int x = 0; x < 4; ++x) {
    const int cut = cfg.cutoffs[x];
    const double tail = coherent_tail_mass(al[x], cut);
    if (tail >= cfg.leak_tol) {
      std::ostringstream os;
      os << "cutoff " << cut << " on mode " << mode_label(static_cast<Mode>(x)) << " leaves tail mass "
         << tail << " >= leak_tol " << cfg.leak_tol << "; required cutoff "
         << required_cutoff(al[x], cfg.leak_tol);
      throw TruncationError(os.str());
    }
    auto& c = ladders[x];
    c.resize(cut + 1);
    c[0] = 1.0;
    for (int n = 1; n <= cut; ++n) c[n] = c[n - 1] * al[x] / std::sqrt(double(n));
    double nrm = 0.0;
    for (const cplx& v : c) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    for (cplx& v : c) v /= nrm;
  }
  OracleState s;
  s.basis = basis;
  s.amplitudes.resize(basis->size());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& o = basis->occupation(i);
    s.amplitudes[i] = ladders[0][o[0]] * ladders[1][o[1]] * ladders[2][o[2]] * ladders[3][o[3]];
  }
  return s;
}

OracleState evolve(const OracleState& state, const Hamiltonian& H, double t,
                   const EvolveOptions& opt, EvolveStats* stats) {
  if (!(t >= state.t)) throw ConfigError("target time precedes the state time", "t");
  const std::size_t N = state.amplitudes.size();
  if (!H.basis || H.basis->size() != N) throw ConfigError("state and Hamiltonian bases differ", "basis");
  if (opt.krylov_dim < 2) throw ConfigError("must be >= 2", "krylov_dim");

  EvolveStats local;
  OracleState out = state;
  std::vector<cplx>& v = out.amplitudes;
  const int m = static_cast<int>(std::min<std::size_t>(opt.krylov_dim, N));
  std::vector<std::vector<cplx>> V(m + 1, std::vector<cplx>(N));
  std::vector<cplx> w(N);
  const double hscale = std::max(H.matrix.max_abs(), 1e-300);

  double remaining = t - state.t;
  double tau_guess = remaining;
  while (remaining > 0.0) {
    if (local.steps >= opt.max_steps)
      throw NumericalError("Krylov evolution exceeded " + std::to_string(opt.max_steps) + " steps");
    const double beta0 = std::sqrt(std::real(dot(opt.backend, v.data(), v.data(), N)));
    if (beta0 == 0.0) break;
    for (std::size_t i = 0; i < N; ++i) V[0][i] = v[i] / beta0;

    std::vector<double> alpha, beta;
    bool breakdown = false;
    int k = m;
    for (int j = 0; j < m; ++j) {
      csr_matvec(opt.backend, H.matrix, V[j].data(), w.data());
      ++local.matvecs;
      alpha.push_back(std::real(dot(opt.backend, V[j].data(), w.data(), N)));
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const cplx c = dot(opt.backend, V[i].data(), w.data(), N);
          for (std::size_t r = 0; r < N; ++r) w[r] -= c * V[i][r];
        }
      const double b = std::sqrt(std::real(dot(opt.backend, w.data(), w.data(), N)));
      beta.push_back(b);
      if (b < 1e-13 * hscale) {
        breakdown = true;
        k = j + 1;
        break;
      }
      for (std::size_t r = 0; r < N; ++r) V[j + 1][r] = w[r] / b;
    }

    Eigen::VectorXd diag(k), sub(std::max(k - 1, 0));
    for (int j = 0; j < k; ++j) diag[j] = alpha[j];
    for (int j = 0; j + 1 < k; ++j) sub[j] = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
    const Eigen::MatrixXd& Q = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();

    auto krylov_coeffs = [&](double tau) {
      Eigen::VectorXcd y(k);
      for (int r = 0; r < k; ++r) {
        cplx acc = 0.0;
        for (int c = 0; c < k; ++c) acc += Q(r, c) * std::polar(1.0, -lam[c] * tau) * Q(0, c);
        y[r] = acc;
      }
      return y;
    };
    auto step_error = [&](const Eigen::VectorXcd& y) {
      return breakdown ? 0.0 : beta0 * beta[k - 1] * std::abs(y[k - 1]);
    };

    double tau = std::min(tau_guess, remaining);
    Eigen::VectorXcd y = krylov_coeffs(tau);
    double err = step_error(y);
    int halvings = 0;
    while (err > opt.tol) {
      if (++halvings > 80)
        throw NumericalError("Krylov step size underflow at t = " + std::to_string(t - remaining));
      tau *= 0.5;
      y = krylov_coeffs(tau);
      err = step_error(y);
    }
    for (std::size_t r = 0; r < N; ++r) {
      cplx acc = 0.0;
      for (int j = 0; j < k; ++j) acc += y[j] * V[j][r];
      v[r] = beta0 * acc;
    }
    local.max_step_error = std::max(local.max_step_error, err);
    ++local.steps;
    remaining = tau >= remaining ? 0.0 : remaining - tau;
    tau_guess = halvings == 0 ? 2.0 * tau : tau;
  }
  out.t = t;
  local.norm_drift = std::abs(out.norm() - 1.0);
  if (stats) {
    stats->steps += local.steps;
    stats->matvecs += local.matvecs;
    stats->max_step_error = std::max(stats->max_step_error, local.max_step_error);
    stats->norm_drift = local.norm_drift;
  }
  return out;
}

namespace {

void lower_in_place(const FockBasis& b, Mode x, std::vector<cplx>& v, std::vector<cplx>& scratch) {
  const std::size_t st = b.stride(x);
  const int cut = b.cutoffs()[static_cast<int>(x)];
  scratch.assign(v.size(), cplx{});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int n = b.occupation(i, x);
    if (n < cut) scratch[i] = std::sqrt(double(n + 1)) * v[i + st];
  }
  v.swap(scratch);
}

}  // namespace

cplx normal_ordered_moment(const OracleState& s, const MomentKey& key) {
  const FockBasis& b = *s.basis;
  for (int x = 0; x < 4; ++x) {
    const Mode m = static_cast<Mode>(x);
    if (key.creation(m) > b.cutoffs()[x] || key.annihilation(m) > b.cutoffs()[x])
      throw TruncationError("moment " + key.to_string() + " needs powers above the cutoff of mode " +
                            std::string(1, mode_label(m)));
    if (key.creation(m) < 0 || key.annihilation(m) < 0)
      throw ConfigError("negative power in " + key.to_string(), "powers");
  }
  // <psi| prod x+^p x^q |psi> = < prod x^p psi | prod x^q psi >
  std::vector<cplx> bra = s.amplitudes, ket = s.amplitudes, scratch;
  for (int x = 0; x < 4; ++x) {
    const Mode m = static_cast<Mode>(x);
    for (int i = 0; i < key.creation(m); ++i) lower_in_place(b, m, bra, scratch);
    for (int i = 0; i < key.annihilation(m); ++i) lower_in_place(b, m, ket, scratch);
  }
  return dot_serial(bra.data(), ket.data(), bra.size());
}

MomentTable collect_moments(const OracleState& s, const std::vector<MomentKey>& keys) {
  MomentTable out;
  for (const auto& k : keys)
    if (!out.count(k)) out[k] = normal_ordered_moment(s, k);
  return out;
}

double top_level_probability(const OracleState& s) {
  double p = 0.0;
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
    if (s.basis->at_cutoff(i)) p += std::norm(s.amplitudes[i]);
  return p;
}

std::array<double, 4> top_level_by_mode(const OracleState& s) {
  std::array<double, 4> p{};
  const auto& cut = s.basis->cutoffs();
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    const auto& o = s.basis->occupation(i);
    for (int x = 0; x < 4; ++x)
      if (o[x] == cut[x]) p[x] += std::norm(s.amplitudes[i]);
  }
  return p;
}

Conserved conserved_quantities(const OracleState& s, const Hamiltonian& H) {
  Conserved c;
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    const double pr = std::norm(s.amplitudes[i]);
    const auto& o = s.basis->occupation(i);
    c.n_abd += pr * (o[0] + o[1] + o[3]);
    c.n_acd += pr * (o[0] + o[2] + 2 * o[3]);
  }
  std::vector<cplx> hv(s.amplitudes.size());
  csr_matvec_serial(H.matrix, s.amplitudes.data(), hv.data());
  c.energy = std::real(dot_serial(s.amplitudes.data(), hv.data(), hv.size()));
  return c;
}

void OracleDiagnostics::require_valid() const {
  if (!truncation_ok()) {
    std::ostringstream os;
    os << "truncation monitor breached: top-level probability " << max_top_level
       << " >= leak_tol " << leak_tol << "; raise the cutoffs";
    throw TruncationError(os.str());
  }
}

std::array<int, 4> OracleDiagnostics::suggested_cutoffs(const std::array<int, 4>& current) const {
  std::array<int, 4> out = current;
  for (int x = 0; x < 4; ++x)
    if (max_top_level_mode[x] >= leak_tol / 4) ++out[x];
  return out;
}

namespace {

double rel_drift(double now, double ref) {
  return std::abs(now - ref) / std::max(std::abs(ref), 1e-300);
}

}  // namespace

OracleSweep oracle_witness_sweep(const RamanParams& p, const CoherentAmplitudes& amps,
                                 const FockConfig& cfg, const std::vector<double>& gt_grid,
                                 const std::vector<WitnessSpec>& specs, const EvolveOptions& opt) {
  for (std::size_t i = 0; i < gt_grid.size(); ++i) {
    if (!(gt_grid[i] >= 0.0)) throw ConfigError("grid times must be >= 0", "grid");
    if (i > 0 && !(gt_grid[i] > gt_grid[i - 1])) throw ConfigError("grid must be strictly increasing", "grid");
  }
  const Hamiltonian H = build_hamiltonian(p, cfg);
  OracleState state = coherent_product_state(amps, cfg);
  const Conserved c0 = conserved_quantities(state, H);

  std::vector<MomentKey> keys;
  for (const auto& s : specs)
    for (const auto& k : required_moments(s)) keys.push_back(k);
  std::vector<MomentKey> firsts;
  for (int x = 0; x < 4; ++x) firsts.push_back(MomentKey::make({{static_cast<Mode>(x), {0, 1}}}));
  keys.insert(keys.end(), firsts.begin(), firsts.end());

  OracleSweep out;
  out.diagnostics.leak_tol = cfg.leak_tol;
  out.diagnostics.max_top_level = top_level_probability(state);
  out.diagnostics.max_top_level_mode = top_level_by_mode(state);
  out.series.resize(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    out.series[s].spec = specs[s];
    out.series[s].scenario = "oracle";
    out.series[s].phi = amps.phi;
  }
  for (double gt : gt_grid) {
    state = evolve(state, H, gt / p.g, opt, &out.diagnostics.evolve);
    const MomentTable tbl = collect_moments(state, keys);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      out.series[s].times.push_back(gt);
      out.series[s].values.push_back(witness_from_moments(specs[s], tbl, gt).value);
    }
    MomentTable fm;
    for (const auto& k : firsts) fm[k] = tbl.at(k);
    out.first_moments.push_back(std::move(fm));

    auto& d = out.diagnostics;
    const Conserved c = conserved_quantities(state, H);
    d.max_norm_drift = std::max(d.max_norm_drift, std::abs(state.norm() - 1.0));
    d.max_rel_drift_abd = std::max(d.max_rel_drift_abd, rel_drift(c.n_abd, c0.n_abd));
    d.max_rel_drift_acd = std::max(d.max_rel_drift_acd, rel_drift(c.n_acd, c0.n_acd));
    d.max_rel_drift_energy = std::max(d.max_rel_drift_energy, rel_drift(c.energy, c0.energy));
    d.max_top_level = std::max(d.max_top_level, top_level_probability(state));
    const auto by_mode = top_level_by_mode(state);
    for (int x = 0; x < 4; ++x) d.max_top_level_mode[x] = std::max(d.max_top_level_mode[x], by_mode[x]);
  }
  return out;
}

double ValidationReport::order(const WitnessSpec& spec) const {
  const ValidationRow* last = nullptr;
  for (const auto& r : rows)
    if (r.spec == spec && (!last || r.gt > last->gt)) last = &r;
  return last ? last->order : std::numeric_limits<double>::quiet_NaN();
}

ValidationReport oracle_validate(const RamanParams& p, const CoherentAmplitudes& amps,
                                 const FockConfig& cfg, const std::vector<double>& gt_grid,
                                 const std::vector<WitnessSpec>& specs, const EvolveOptions& opt) {
  const OracleSweep sweep = oracle_witness_sweep(p, amps, cfg, gt_grid, specs, opt);
  ValidationReport rep;
  rep.diagnostics = sweep.diagnostics;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const ValidationRow* prev = nullptr;
    std::size_t first = rep.rows.size();
    for (std::size_t i = 0; i < gt_grid.size(); ++i) {
      ValidationRow row;
      row.spec = specs[s];
      row.gt = gt_grid[i];
      row.closed_form = evaluate_witness(specs[s], eval_coefficients(p, gt_grid[i] / p.g), amps).value;
      row.oracle = sweep.series[s].values[i];
      row.abs_diff = std::abs(row.closed_form - row.oracle);
      row.order = std::numeric_limits<double>::quiet_NaN();
      if (prev && prev->abs_diff > 0.0 && row.abs_diff > 0.0 && prev->gt > 0.0)
        row.order = std::log(row.abs_diff / prev->abs_diff) / std::log(row.gt / prev->gt);
      rep.rows.push_back(row);
      prev = &rep.rows[first + i];
    }
  }
  return rep;
}

}  // namespace raman
