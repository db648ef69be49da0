#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace raman {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Mode : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

char mode_label(Mode m);
Mode parse_mode(char ch);

struct CoherentAmplitudes {
  cplx alpha1{};
  cplx alpha2{};
  cplx alpha3{};
  cplx alpha4{};
  double phi = 0.0;

  // alpha1 = abs1 * exp(-i phi); the other amplitudes are real.
  static CoherentAmplitudes from_polar(double abs1, double phi, double abs2, double abs3,
                                       double abs4);

  cplx operator[](Mode m) const;
  std::array<cplx, 4> as_array() const { return {alpha1, alpha2, alpha3, alpha4}; }
  CoherentAmplitudes with_phase(double new_phi) const;
};

struct RamanParams {
  double g = 0.0;
  double chi = 0.0;
  double dw1 = 0.0;  // omega_b + omega_c - omega_a
  double dw2 = 0.0;  // omega_a + omega_c - omega_d
  std::optional<std::array<double, 4>> omega;

  // Throws ConfigError.
  void validate() const;
  // Bare frequencies, zero when omega is absent.
  std::array<double, 4> frequencies() const;
  static RamanParams from_frequencies(double g, double chi, const std::array<double, 4>& w);
  bool operator==(const RamanParams&) const = default;
};

// Soft validity bound g t > 0.5.
bool beyond_perturbative_range(const RamanParams& p, double t);

struct ScaledParams {
  double chi_over_g = 0.0;
  double dw1_over_g = 0.0;
  double dw2_over_g = 0.0;
  double time_scale = 0.0;  // seconds per unit of gt
};

ScaledParams nondimensionalize(const RamanParams& p);
// Same physics with g = 1, so times are measured in gt.
RamanParams unit_coupling(const RamanParams& p);

enum class Criterion : std::uint8_t { hz1, hz2, three_mode, four_mode };
enum class Pair : std::uint8_t { ab, bc, ac, ad, cd, bd };

std::string_view criterion_name(Criterion c);
std::string_view pair_name(Pair p);
inline constexpr std::array<Pair, 6> kAllPairs = {Pair::ab, Pair::bc, Pair::ac,
                                                  Pair::ad, Pair::cd, Pair::bd};

struct WitnessSpec {
  Criterion criterion = Criterion::hz1;
  std::vector<Mode> modes{Mode::a, Mode::b};
  int n = 1;
  int m = 1;

  static WitnessSpec pairwise(Criterion c, Pair p, int n, int m);
  static WitnessSpec three_mode();
  static WitnessSpec four_mode();

  // Throws SpecError.
  void validate() const;
  bool is_pairwise() const { return criterion == Criterion::hz1 || criterion == Criterion::hz2; }
  bool higher_order() const { return !is_pairwise() || n + m >= 3; }
  Pair pair() const;

  // Mini-language "criterion:modes:n,m", e.g. "hz2:bc:3,1", "three:abc", "four:abcd".
  std::string to_string() const;
  static WitnessSpec parse(std::string_view text);

  auto operator<=>(const WitnessSpec&) const = default;
};

struct WitnessSeries {
  WitnessSpec spec;
  std::vector<double> times;  // gt
  std::vector<double> values;
  std::string scenario;
  double phi = 0.0;

  // Throws NumericalError when lengths, ordering or the t=0 value are off.
  void check_invariants(double zero_tol = 1e-12) const;
};

// Powers of a normal-ordered monomial: {(p_a, q_a), ..., (p_d, q_d)} for
// a^{+p_a} a^{q_a} b^{+p_b} b^{q_b} ...
struct MomentKey {
  std::array<int, 8> powers{};

  static MomentKey make(std::initializer_list<std::pair<Mode, std::pair<int, int>>> entries);
  int creation(Mode m) const { return powers[2 * static_cast<int>(m)]; }
  int annihilation(Mode m) const { return powers[2 * static_cast<int>(m) + 1]; }
  std::string to_string() const;
  auto operator<=>(const MomentKey&) const = default;
};

using MomentTable = std::map<MomentKey, cplx>;

enum class Preset : std::uint8_t { stimulated, spontaneous, partial_spontaneous, desk };

std::string_view preset_name(Preset p);
Preset parse_preset(std::string_view name);

struct Scenario {
  RamanParams params;
  CoherentAmplitudes amps;
  std::string label;
};

using Overrides = std::map<std::string, double>;

// Recognised override keys: g chi dw1 dw2 omega_a omega_b omega_c omega_d
// alpha1 alpha2 alpha3 alpha4 (magnitudes) phi.
Scenario make_scenario(Preset preset, const Overrides& overrides = {});
const std::vector<std::string>& override_keys();

}  // namespace raman
