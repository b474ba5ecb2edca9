#ifndef PNSPACE_TESTS_ORACLES_HPP
#define PNSPACE_TESTS_ORACLES_HPP

// Reference computations written straight from the definitions, sharing no
// code with the library kernels beyond d.d.f. evaluation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "pnspace/ddf.hpp"

namespace oracle {

using Op = std::function<double(double, double)>;

/// sup_{u+v=x} T(F(u), G(v)) at every grid abscissa, found by scanning u over
/// quarter-cell offsets of an interior point x of each cell. Both inputs are
/// constant on cells, so the split points cover every cell pair.
inline std::vector<double> sup_convolution(const Op& t, const pnspace::Ddf& f, const pnspace::Ddf& g) {
  const auto& grid = f.grid();
  const double h = grid.step();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double x = grid.at(k) - h / 4.0;
    double best = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double u = grid.at(i) + h / 4.0;
      const double v = x - u;
      best = std::max(best, t(f(u), g(v)));
    }
    // u = 0 or v = 0 contributes T(0, .) = 0.
    out[k] = best;
  }
  return out;
}

/// inf_{u+v=x} S(F(u), G(v)) at every grid abscissa: the infimum sits on the
/// exact grid splits, where both arguments take their smallest cell values.
inline std::vector<double> inf_convolution(const Op& s, const pnspace::Ddf& f, const pnspace::Ddf& g) {
  const auto& grid = f.grid();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double least = 1.0;
    for (std::size_t i = 0; i <= k; ++i) least = std::min(least, s(f(grid.at(i)), g(grid.at(k - i))));
    out[k] = least;
  }
  return out;
}

/// True when the sequence is a valid member of Delta+ on the grid.
inline bool in_delta_plus(const pnspace::Ddf& f, double tol = 1e-9) {
  const auto v = f.values();
  if (v.empty() || std::abs(v[0]) > tol) return false;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(v[k] >= -tol && v[k] <= 1.0 + tol)) return false;
    if (k > 0 && v[k] + tol < v[k - 1]) return false;
  }
  return f.tail() + tol >= v.back() && f.tail() <= 1.0 + tol && f.at_infinity() + tol >= f.tail() &&
         f.at_infinity() <= 1.0 + tol;
}

}  // namespace oracle

#endif
