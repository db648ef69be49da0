#pragma once
// Test-only oracle: expands products of the second-order operator solution
// term by term, normal-orders each single-mode word with a a+ = a+ a + 1 and
// evaluates it on the coherent product state. Coefficients carry a bookkeeping
// order (lambda^0, ^1, ^2) and products are truncated at lambda^2.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "raman/coefficients.hpp"
#include "raman/core.hpp"

namespace raman::testing {

struct Jet {
  std::array<cplx, 3> c{};

  static Jet order(int k, cplx v) {
    Jet j;
    j.c[k] = v;
    return j;
  }
  cplx sum() const { return c[0] + c[1] + c[2]; }

  friend Jet operator+(Jet x, const Jet& y) {
    for (int i = 0; i < 3; ++i) x.c[i] += y.c[i];
    return x;
  }
  friend Jet operator-(Jet x, const Jet& y) {
    for (int i = 0; i < 3; ++i) x.c[i] -= y.c[i];
    return x;
  }
  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; i + j < 3; ++j) r.c[i + j] += x.c[i] * y.c[j];
    return r;
  }
  friend Jet conj(Jet x) {
    for (auto& v : x.c) v = std::conj(v);
    return x;
  }
};

// Operator polynomial. Key: four single-mode words joined by '|', each word a
// string over {'a' = annihilation, 'A' = creation} in operator order.
using Series = std::map<std::string, Jet>;

inline std::string make_key(const std::array<std::string, 4>& w) {
  return w[0] + "|" + w[1] + "|" + w[2] + "|" + w[3];
}

inline std::array<std::string, 4> split_key(const std::string& key) {
  std::array<std::string, 4> out;
  int m = 0;
  for (char ch : key) {
    if (ch == '|') ++m;
    else out[m] += ch;
  }
  return out;
}

inline Series identity_series() { return {{make_key({}), Jet::order(0, 1.0)}}; }

// x(t) as printed in the operator solution, one term per coefficient.
inline Series mode_operator(Mode x, const CoefficientSet& k) {
  struct T {
    int order;
    cplx coef;
    std::array<std::string, 4> w;
  };
  std::vector<T> terms;
  switch (x) {
    case Mode::a:
      terms = {{0, k.f(1), {"a", "", "", ""}},  {1, k.f(2), {"", "a", "a", ""}},
               {1, k.f(3), {"", "", "A", "a"}}, {2, k.f(4), {"A", "a", "", "a"}},
               {2, k.f(5), {"a", "aA", "", ""}}, {2, k.f(6), {"a", "", "Aa", ""}},
               {2, k.f(7), {"a", "", "Aa", ""}}, {2, k.f(8), {"a", "", "", "Aa"}}};
      break;
    case Mode::b:
      terms = {{0, k.g(1), {"", "a", "", ""}},   {1, k.g(2), {"a", "", "A", ""}},
               {2, k.g(3), {"aa", "", "", "A"}}, {2, k.g(4), {"", "", "AA", "a"}},
               {2, k.g(5), {"", "a", "aA", ""}}, {2, k.g(6), {"aA", "a", "", ""}}};
      break;
    case Mode::c:
      terms = {{0, k.h(1), {"", "", "a", ""}},  {1, k.h(2), {"a", "A", "", ""}},
               {1, k.h(3), {"A", "", "", "a"}}, {2, k.h(4), {"", "A", "A", "a"}},
               {2, k.h(5), {"aA", "", "a", ""}}, {2, k.h(6), {"", "aA", "a", ""}},
               {2, k.h(7), {"", "", "a", "Aa"}}, {2, k.h(8), {"Aa", "", "a", ""}}};
      break;
    case Mode::d:
      terms = {{0, k.l(1), {"", "", "", "a"}},   {1, k.l(2), {"a", "", "a", ""}},
               {2, k.l(3), {"aa", "A", "", ""}}, {2, k.l(4), {"", "a", "aa", ""}},
               {2, k.l(5), {"", "", "Aa", "a"}}, {2, k.l(6), {"aA", "", "", "a"}}};
      break;
  }
  Series s;
  for (const auto& t : terms) {
    auto& slot = s[make_key(t.w)];
    slot = slot + Jet::order(t.order, t.coef);
  }
  return s;
}

inline Series dagger(const Series& s) {
  Series out;
  for (const auto& [key, coef] : s) {
    auto w = split_key(key);
    for (auto& word : w) {
      std::string r(word.rbegin(), word.rend());
      for (char& ch : r) ch = ch == 'a' ? 'A' : 'a';
      word = r;
    }
    auto& slot = out[make_key(w)];
    slot = slot + conj(coef);
  }
  return out;
}

inline Series product(const Series& x, const Series& y) {
  Series out;
  for (const auto& [kx, cx] : x) {
    const auto wx = split_key(kx);
    for (const auto& [ky, cy] : y) {
      const Jet c = cx * cy;
      if (c.c[0] == cplx{} && c.c[1] == cplx{} && c.c[2] == cplx{}) continue;
      const auto wy = split_key(ky);
      std::array<std::string, 4> w;
      for (int i = 0; i < 4; ++i) w[i] = wx[i] + wy[i];
      auto& slot = out[make_key(w)];
      slot = slot + c;
    }
  }
  return out;
}

using Poly = std::map<std::pair<int, int>, double>;  // (p, q) -> weight of a+^p a^q

inline const Poly& normal_order(const std::string& word) {
  static std::map<std::string, Poly> memo;
  if (auto it = memo.find(word); it != memo.end()) return it->second;
  Poly out;
  const auto pos = word.find("aA");
  if (pos == std::string::npos) {
    int p = 0;
    while (p < static_cast<int>(word.size()) && word[p] == 'A') ++p;
    out[{p, static_cast<int>(word.size()) - p}] = 1.0;
  } else {
    const std::string swapped = word.substr(0, pos) + "Aa" + word.substr(pos + 2);
    const std::string removed = word.substr(0, pos) + word.substr(pos + 2);
    for (const auto& [pq, w] : normal_order(swapped)) out[pq] += w;
    for (const auto& [pq, w] : normal_order(removed)) out[pq] += w;
  }
  return memo.emplace(word, std::move(out)).first->second;
}

inline cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline Jet expectation(const Series& s, const CoherentAmplitudes& amps) {
  const auto al = amps.as_array();
  Jet total;
  for (const auto& [key, coef] : s) {
    const auto w = split_key(key);
    cplx v = 1.0;
    for (int x = 0; x < 4 && v != cplx{}; ++x) {
      cplx mv = 0.0;
      for (const auto& [pq, weight] : normal_order(w[x]))
        mv += weight * ipow(std::conj(al[x]), pq.first) * ipow(al[x], pq.second);
      v *= mv;
    }
    Jet term = coef;
    for (auto& comp : term.c) comp *= v;
    total = total + term;
  }
  return total;
}

// <prod_x (x+(t))^p_x (x(t))^q_x>, modes in order a, b, c, d.
inline Jet moment_jet(const MomentKey& key, const CoefficientSet& k, const CoherentAmplitudes& amps) {
  Series s = identity_series();
  for (int x = 0; x < 4; ++x) {
    const Mode mode = static_cast<Mode>(x);
    const Series op = mode_operator(mode, k);
    const Series opd = dagger(op);
    for (int i = 0; i < key.creation(mode); ++i) s = product(s, opd);
    for (int i = 0; i < key.annihilation(mode); ++i) s = product(s, op);
  }
  return expectation(s, amps);
}

}  // namespace raman::testing
