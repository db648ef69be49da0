#include "raman/fock.hpp"

#include <algorithm>
#include <cmath>

#include "raman/errors.hpp"

namespace raman {

std::size_t FockConfig::dimension() const {
  std::size_t d = 1;
  for (int c : cutoffs) d *= static_cast<std::size_t>(std::max(c, 0) + 1);
  return d;
}

void FockConfig::validate() const {
  for (int i = 0; i < 4; ++i)
    if (cutoffs[i] < 1 || cutoffs[i] > 255)
      throw ConfigError("cutoff for mode " + std::string(1, mode_label(static_cast<Mode>(i))) +
                            " must be in [1, 255]",
                        "cutoffs");
  if (!(leak_tol > 0.0)) throw ConfigError("must be > 0", "leak_tol");
  if (dimension() > max_dimension)
    throw ResourceError("Fock dimension " + std::to_string(dimension()) + " exceeds cap " +
                        std::to_string(max_dimension));
}

FockBasis::FockBasis(const FockConfig& cfg) : cutoffs_(cfg.cutoffs) {
  cfg.validate();
  strides_[3] = 1;
  for (int x = 2; x >= 0; --x) strides_[x] = strides_[x + 1] * static_cast<std::size_t>(cutoffs_[x + 1] + 1);
  occ_.resize(cfg.dimension());
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    std::size_t r = i;
    for (int x = 0; x < 4; ++x) {
      occ_[i][x] = static_cast<std::uint8_t>(r / strides_[x]);
      r %= strides_[x];
    }
  }
}

std::size_t FockBasis::index(const std::array<int, 4>& n) const {
  std::size_t i = 0;
  for (int x = 0; x < 4; ++x) i += static_cast<std::size_t>(n[x]) * strides_[x];
  return i;
}

bool FockBasis::at_cutoff(std::size_t i) const {
  for (int x = 0; x < 4; ++x)
    if (occ_[i][x] == cutoffs_[x]) return true;
  return false;
}

cplx CsrMatrix::at(std::size_t r, std::size_t c) const {
  for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
    if (col[k] == c) return val[k];
  return {};
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : val) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace raman
