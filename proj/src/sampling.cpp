#include "pnspace/sampling.hpp"

#include <cmath>

namespace pnspace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

namespace {

Ddf random_step(Rng& rng, const Grid& grid) {
  const auto k = std::uniform_int_distribution<std::size_t>(1, grid.n / 2)(rng);
  return make_eps(grid.at(k), grid);
}

Ddf random_mixture(Rng& rng, const Grid& grid) {
  const auto count = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<double> w(count);
  std::vector<Ddf> fs;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    w[i] = uniform(rng, 0.05, 1.0);
    total += w[i];
    fs.push_back(random_step(rng, grid));
  }
  for (auto& x : w) x /= total;
  auto m = mixture(w, fs, grid).ddf;
  // Rounding in the normalisation can leave the top just below 1.
  return Ddf(grid, std::vector<double>(m.values().begin(), m.values().end()), 1.0, 1.0);
}

}  // namespace

Ddf sample_step_ddf(Rng& rng, const Grid& grid) {
  return uniform(rng) < 0.4 ? random_step(rng, grid) : random_mixture(rng, grid);
}

Ddf sample_ddf(Rng& rng, const Grid& grid) {
  const double r = uniform(rng);
  if (r < 0.15) return make_eps(0.0, grid);
  if (r < 0.40) return random_step(rng, grid);
  if (r < 0.65) return random_mixture(rng, grid);
  const double c = log_uniform(rng, grid.step(), grid.x_max / 2.0);
  return (uniform(rng) < 0.5 ? AnalyticDdf::ratio(c) : AnalyticDdf::exp_complement(c)).sample(grid);
}

std::vector<double> sample_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = standard_normal(rng);
  return v;
}

}  // namespace pnspace
