#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "raman/core.hpp"

namespace raman {

struct FockConfig {
  std::array<int, 4> cutoffs{7, 5, 5, 5};  // inclusive n_max per mode a, b, c, d
  double leak_tol = 1e-8;
  std::size_t max_dimension = std::size_t{1} << 20;

  std::size_t dimension() const;
  // ConfigError on bad cutoffs, ResourceError above max_dimension.
  void validate() const;
  bool operator==(const FockConfig&) const = default;
};

// Flat index <-> occupation 4-tuple, last mode fastest.
class FockBasis {
public:
  explicit FockBasis(const FockConfig& cfg);

  std::size_t size() const { return occ_.size(); }
  const std::array<int, 4>& cutoffs() const { return cutoffs_; }
  std::size_t stride(Mode m) const { return strides_[static_cast<int>(m)]; }
  std::size_t index(const std::array<int, 4>& n) const;
  const std::array<std::uint8_t, 4>& occupation(std::size_t i) const { return occ_[i]; }
  int occupation(std::size_t i, Mode m) const { return occ_[i][static_cast<int>(m)]; }
  bool at_cutoff(std::size_t i) const;

private:
  std::array<int, 4> cutoffs_{};
  std::array<std::size_t, 4> strides_{};
  std::vector<std::array<std::uint8_t, 4>> occ_;
};

// Compressed sparse row matrix.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col;
  std::vector<cplx> val;

  std::size_t nnz() const { return val.size(); }
  cplx at(std::size_t r, std::size_t c) const;
  double max_abs() const;
};

}  // namespace raman
