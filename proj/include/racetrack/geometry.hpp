#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace racetrack::geometry {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any angle onto [-pi, pi).
double wrap_angle(double theta);

/// Shorter arc length between two points of a circle of radius r.
double arc_distance(double theta_a, double theta_b, double r);

/// Uniform discretisation of the circle of radius r:
/// theta_i = -pi + 2 pi i / n, each node carrying arc length 2 pi r / n.
/// n must be even (a node sits exactly opposite theta = 0) and at least 8.
class CircleGrid {
 public:
  CircleGrid(double r, std::size_t n);

  double radius() const noexcept { return r_; }
  std::size_t size() const noexcept { return theta_.size(); }
  double weight() const noexcept { return weight_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(size()); }
  double circumference() const noexcept { return kTwoPi * r_; }
  double theta(std::size_t i) const { return theta_[i]; }
  std::span<const double> thetas() const noexcept { return theta_; }

  /// Node at theta = 0.
  std::size_t origin_node() const noexcept { return size() / 2; }
  /// Node at theta = -pi, opposite the origin.
  std::size_t antipode_node() const noexcept { return 0; }
  /// Nearest node to an arbitrary angle.
  std::size_t nearest_node(double theta) const;
  /// Node-count distance between two nodes along the shorter way round.
  std::size_t node_separation(std::size_t i, std::size_t j) const;

 private:
  double r_;
  double weight_;
  std::vector<double> theta_;
};

/// Periodic trapezoid rule: sum_i f_i * weight.
double integrate(std::span<const double> f, const CircleGrid& grid);

/// Trapezoid rule with Euler-Maclaurin end corrections at nodes where f has
/// a jump in its first derivative. The one-sided derivatives are estimated
/// with second-order stencils, so the rule is fourth order for integrands
/// that are smooth between the listed nodes.
double integrate_with_kinks(std::span<const double> f, const CircleGrid& grid,
                            std::span<const std::size_t> kink_nodes);

/// exp(-alpha * |x - y|) on the grid, as a circulant quadrature operator.
///
/// Weights are h * exp(-alpha d_ij) times one scalar chosen so that every row
/// reproduces (2 / alpha)(1 - exp(-alpha pi r)) exactly. The operator stays
/// symmetric and second order for smooth integrands.
class ExponentialKernel {
 public:
  ExponentialKernel(const CircleGrid& grid, double alpha);

  double alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return row_.size(); }

  /// Quadrature weight coupling nodes i and j.
  double weight(std::size_t i, std::size_t j) const;

  /// out_i = sum_j weight(i, j) * f_j, an approximation of the convolution.
  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> f) const;

  /// Closed-form integral of the kernel over the whole circle.
  static double exact_mass(double alpha, double r);

 private:
  double alpha_;
  std::vector<double> row_;  // weight(0, k), indexed by node offset k
};

}  // namespace racetrack::geometry
