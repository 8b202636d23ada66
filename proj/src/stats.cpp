#include "acqf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace acqf {

namespace {

double log_binomial_pmf(std::size_t k, std::size_t n, double log_p, double log_q) {
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) +
         kk * log_p + (nn - kk) * log_q;
}

}  // namespace

double binomial_p_value(std::size_t n_plus, std::size_t n_total, double p,
                        TailConvention tails) {
  if (n_plus > n_total) throw InvalidCounts("n_plus exceeds n_total");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidCounts("probability outside [0, 1]");
  if (n_total == 0) return 1.0;
  if (p == 0.0) return n_plus == 0 ? 1.0 : kImpossiblePValue;
  if (p == 1.0) return n_plus == n_total ? 1.0 : kImpossiblePValue;

  const double log_p = std::log(p), log_q = std::log1p(-p);
  double lower = 0.0, upper = 0.0, at = 0.0;
  // Sum each tail from its far end so the small terms accumulate first.
  for (std::size_t k = 0; k <= n_plus; ++k) {
    lower += std::exp(log_binomial_pmf(k, n_total, log_p, log_q));
  }
  for (std::size_t k = n_total + 1; k-- > n_plus;) {
    upper += std::exp(log_binomial_pmf(k, n_total, log_p, log_q));
  }
  if (tails == TailConvention::MidP) {
    at = 0.5 * std::exp(log_binomial_pmf(n_plus, n_total, log_p, log_q));
  }
  const double tail = std::min(lower, upper) - at;
  return std::clamp(2.0 * tail, std::numeric_limits<double>::min(), 1.0);
}

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEps = 1e-16;

// P(a, x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by its continued fraction (modified Lentz); valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double gamma_p(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double chi2_survival(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

FisherResult fisher_combine(std::span<const double> p_values) {
  if (p_values.empty()) throw EmptyInput("fisher_combine: no p-values");
  double stat = 0.0;
  for (double p : p_values) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("fisher_combine: p outside (0, 1]");
    stat -= 2.0 * std::log(p);
  }
  stat = std::max(stat, 0.0);
  return {stat, chi2_survival(stat, 2.0 * static_cast<double>(p_values.size()))};
}

KsResult ks_uniform(std::span<const double> samples) {
  if (samples.empty()) throw EmptyInput("ks_uniform: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double u = std::clamp(sorted[i], 0.0, 1.0);
    const double di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - u, u - di / n});
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  // Kolmogorov survival 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
  double q = 0.0;
  if (lambda < 1e-3) {
    q = 1.0;
  } else {
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
      const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
      q += term;
      if (std::abs(term) < 1e-16) break;
      sign = -sign;
    }
    q = std::clamp(2.0 * q, 0.0, 1.0);
  }
  return {d, q};
}

}  // namespace acqf
