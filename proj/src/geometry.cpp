#include "racetrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "racetrack/error.hpp"

namespace racetrack::geometry {

double wrap_angle(double theta) {
  double wrapped = theta - kTwoPi * std::floor((theta + kPi) / kTwoPi);
  if (wrapped >= kPi) wrapped -= kTwoPi;
  if (wrapped < -kPi) wrapped = -kPi;
  return wrapped;
}

double arc_distance(double theta_a, double theta_b, double r) {
  const double gap = std::abs(wrap_angle(theta_a) - wrap_angle(theta_b));
  return std::min(r * gap, kTwoPi * r - r * gap);
}

CircleGrid::CircleGrid(double r, std::size_t n) : r_(r) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw ConfigError("r", "radius r must be finite and >= 1, got " + std::to_string(r));
  }
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("n", "node count n must be even and >= 8, got " + std::to_string(n));
  }
  weight_ = kTwoPi * r / static_cast<double>(n);
  theta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    theta_[i] = -kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  }
}

std::size_t CircleGrid::nearest_node(double theta) const {
  const double offset = (wrap_angle(theta) + kPi) / spacing();
  const auto k = static_cast<std::size_t>(std::llround(offset));
  return k % size();
}

std::size_t CircleGrid::node_separation(std::size_t i, std::size_t j) const {
  const std::size_t gap = i > j ? i - j : j - i;
  return std::min(gap, size() - gap);
}

double integrate(std::span<const double> f, const CircleGrid& grid) {
  if (f.size() != grid.size()) {
    throw ContractViolation("integrate: field has " + std::to_string(f.size()) +
                            " entries, grid has " + std::to_string(grid.size()));
  }
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum * grid.weight();
}

double integrate_with_kinks(std::span<const double> f, const CircleGrid& grid,
                            std::span<const std::size_t> kink_nodes) {
  const double trapezoid = integrate(f, grid);
  const std::size_t n = grid.size();
  const double h = grid.weight();
  auto at = [&](std::size_t c, long offset) {
    const long idx = (static_cast<long>(c) + offset) % static_cast<long>(n);
    return f[static_cast<std::size_t>(idx < 0 ? idx + static_cast<long>(n) : idx)];
  };
  double jumps = 0.0;
  for (std::size_t c : kink_nodes) {
    if (c >= n) throw ContractViolation("integrate_with_kinks: kink node out of range");
    const double right = (-3.0 * at(c, 0) + 4.0 * at(c, 1) - at(c, 2)) / (2.0 * h);
    const double left = (3.0 * at(c, 0) - 4.0 * at(c, -1) + at(c, -2)) / (2.0 * h);
    jumps += right - left;
  }
  return trapezoid + h * h / 12.0 * jumps;
}

double ExponentialKernel::exact_mass(double alpha, double r) {
  const double arc = alpha * kPi * r;
  if (arc < 1e-12) return kTwoPi * r * (1.0 - 0.5 * arc);
  return 2.0 / alpha * -std::expm1(-arc);
}

ExponentialKernel::ExponentialKernel(const CircleGrid& grid, double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ContractViolation("ExponentialKernel: alpha must be finite and >= 0");
  }
  const std::size_t n = grid.size();
  row_.resize(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = grid.radius() * grid.spacing() * static_cast<double>(std::min(k, n - k));
    row_[k] = grid.weight() * std::exp(-alpha * d);
    sum += row_[k];
  }
  const double scale = exact_mass(alpha, grid.radius()) / sum;
  for (double& w : row_) w *= scale;
}

double ExponentialKernel::weight(std::size_t i, std::size_t j) const {
  const std::size_t n = row_.size();
  return row_[(j + n - i) % n];
}

void ExponentialKernel::apply(std::span<const double> f, std::span<double> out) const {
  const std::size_t n = row_.size();
  if (f.size() != n || out.size() != n) {
    throw ContractViolation("ExponentialKernel::apply: size mismatch");
  }
  // Row entries are c q^k for the shorter offset k, so out_i splits into a
  // forward window (offsets 0..m) and a backward one (1..m-1), each updated
  // in O(1) from its neighbour.
  const std::size_t m = n / 2;
  const double c = row_[0];
  const double q = row_[1] / row_[0];
  const double q_fwd_tail = std::pow(q, static_cast<double>(m + 1));
  const double q_bwd_tail = std::pow(q, static_cast<double>(m - 1));
  auto at = [&](std::size_t k) { return f[k % n]; };

  // forward: A_i = sum_{k=0}^{m} q^k f_{i+k}, swept i = n-1 .. 0 from A_0
  double A = 0.0;
  for (std::size_t k = m + 1; k-- > 0;) A = at(k) + q * A;
  // backward: B_i = sum_{k=1}^{m-1} q^k f_{i-k}, swept i = 1 .. n-1 from B_0
  double B = 0.0;
  for (std::size_t k = m - 1; k >= 1; --k) B = q * (at(n - k) + B);

  std::vector<double> fwd(n), bwd(n);
  fwd[0] = A;
  for (std::size_t i = n - 1; i >= 1; --i) {
    A = f[i] + q * A - q_fwd_tail * at(i + m + 1);
    fwd[i] = A;
  }
  bwd[0] = B;
  for (std::size_t i = 1; i < n; ++i) {
    B = q * (B + f[i - 1]) - q_bwd_tail * q * at(i + n - m);
    bwd[i] = B;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = c * (fwd[i] + bwd[i]);
}

std::vector<double> ExponentialKernel::apply(std::span<const double> f) const {
  std::vector<double> out(f.size());
  apply(f, out);
  return out;
}

}  // namespace racetrack::geometry
