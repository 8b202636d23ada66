#pragma once

// Exact binomial test, Fisher's combination and the special functions behind
// them. Nothing here allocates beyond its inputs.

#include <cstddef>
#include <span>
#include <stdexcept>

namespace acqf {

struct InvalidCounts : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Stand-in p-value for an outcome that has probability zero under the null.
inline constexpr double kImpossiblePValue = 1e-300;

enum class TailConvention {
  Exact,  // tails include the observed count
  MidP,   // tails include half the observed count's mass
};

/// Two-sided binomial p-value: min(1, 2 * min(lower tail, upper tail)).
///
/// With p in {0, 1} the outcome is either certain (p-value 1) or impossible
/// (kImpossiblePValue). No data (n_total == 0) gives 1. Throws InvalidCounts
/// if n_plus > n_total or p lies outside [0, 1].
double binomial_p_value(std::size_t n_plus, std::size_t n_total, double p,
                        TailConvention tails = TailConvention::Exact);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), for
/// a > 0, x >= 0. Series for P when x < a + 1, modified Lentz continued
/// fraction for Q otherwise.
double gamma_q(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double gamma_p(double a, double x);

/// Survival function of the chi-squared distribution with `dof` degrees of freedom.
double chi2_survival(double x, double dof);

struct FisherResult {
  double statistic;
  double combined_p;
};

/// Fisher's method: statistic -2 sum ln p_i, referred to chi-squared with
/// 2k degrees of freedom. Throws EmptyInput on an empty list and
/// std::invalid_argument for any p outside (0, 1].
FisherResult fisher_combine(std::span<const double> p_values);

struct KsResult {
  double statistic;
  double p_value;
};

/// One-sample Kolmogorov-Smirnov test against Uniform(0, 1), using the
/// asymptotic Kolmogorov distribution with Stephens' small-sample correction.
KsResult ks_uniform(std::span<const double> samples);

}  // namespace acqf
