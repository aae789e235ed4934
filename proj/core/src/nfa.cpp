#include "gestalt/nfa.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gestalt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log10_area(const ImageDomain& domain) {
  return std::log10(domain.area());
}

}  // namespace

Params Params::defaults(const ImageDomain& domain) {
  constexpr double deg = std::numbers::pi / 180.0;
  Params p;
  p.rho = std::min(10.0, std::ceil(0.1 * std::max(domain.m, domain.n)));
  p.theta_s = 150.0 * deg;
  p.lambda = 2.0;
  p.epsilon = 1.0;
  p.align_theta = 3.0 * deg;
  p.bar_theta_tol = 3.0 * deg;
  p.k_max = 64;
  return p;
}

void Params::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("params: rho must be > 0");
  if (!(theta_s > 0.0 && theta_s <= std::numbers::pi)) {
    throw std::invalid_argument("params: theta_s must be in (0, pi]");
  }
  if (!(lambda >= 0.0)) throw std::invalid_argument("params: lambda must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("params: epsilon must be > 0");
  if (!(align_theta < theta_s)) {
    throw std::invalid_argument("params: align_theta must be < theta_s");
  }
  if (!(bar_theta_tol > 0.0 && bar_theta_tol < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("params: bar_theta_tol must be in (0, pi/2)");
  }
  if (k_max < 2) throw std::invalid_argument("params: k_max must be >= 2");
}

LogNfa log_nfa_good_continuation(int n_segments, int k, double d, double theta,
                                 const ImageDomain& domain) {
  if (n_segments < 1) throw std::invalid_argument("log_nfa: segment count must be >= 1");
  if (k < 1) throw std::invalid_argument("log_nfa: chain length must be >= 1");
  const double log_starts = std::log10(2.0 * n_segments);
  if (k == 1) return {log_starts};
  if (n_segments < 2 || d <= 0.0 || theta <= 0.0) return {kNegInf};
  // log10 of 3 * (N-1) * theta^2 * d^2 / (mn * pi), the per-joint term.
  const double log_joint = std::log10(3.0) + std::log10(n_segments - 1.0) +
                           2.0 * std::log10(theta) + 2.0 * std::log10(d) -
                           log10_area(domain) - std::log10(std::numbers::pi);
  return {log_starts + (k - 1) * log_joint};
}

LogNfa log_nfa_alignment(int n_segments, int k, double d, double theta, double lambda,
                         const ImageDomain& domain) {
  if (n_segments < 1) throw std::invalid_argument("log_nfa: segment count must be >= 1");
  if (k < 1) throw std::invalid_argument("log_nfa: chain length must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("log_nfa: lambda must be > 0");
  const double log_starts = std::log10(2.0 * n_segments);
  if (k == 1) return {log_starts};
  if (n_segments < 2 || d <= 0.0 || theta <= 0.0) return {kNegInf};
  // log10 of 3 * (N-1) * 2*lambda*d/(mn) * theta/pi, the per-joint term.
  const double log_joint = std::log10(3.0) + std::log10(n_segments - 1.0) +
                           std::log10(2.0 * lambda) + std::log10(d) - log10_area(domain) +
                           std::log10(theta) - std::log10(std::numbers::pi);
  return {log_starts + (k - 1) * log_joint};
}

LogNfa log_nfa_bar(int n_elements, double d, double theta, const ImageDomain& domain) {
  if (n_elements < 2) throw std::invalid_argument("log_nfa: bar element count must be >= 2");
  if (d <= 0.0 || theta <= 0.0) return {kNegInf};
  return {std::log10(3.0) + std::log10(static_cast<double>(n_elements)) +
          std::log10(n_elements - 1.0) +
          2.0 * (std::log10(std::numbers::pi) + 2.0 * std::log10(d) - log10_area(domain)) +
          std::log10(theta) - std::log10(std::numbers::pi)};
}

bool is_meaningful(LogNfa score, double epsilon) {
  return score.value < std::log10(epsilon);
}

}  // namespace gestalt
