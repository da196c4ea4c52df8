#pragma once

// The Parry measure (the beta-shift's measure of maximal entropy), entropy
// estimators through the digit partition, and dimension of the projected
// measure nu_beta.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betafrac/beta_symbolic.hpp"
#include "betafrac/params.hpp"
#include "betafrac/skew_system.hpp"

namespace betafrac {

/// T^k(1) for k = 0..n with T(1) = beta - 1. A product landing within
/// kAdmissibilityTolerance of 1 is snapped, so an orbit that reaches the
/// branch point falls to 0 and stays there.
std::vector<double> parry_orbit(double beta, std::size_t n);

/// Invariant density h(x) = (1/F) Sum_{n >= 0, x < T^n(1)} beta^-n of
/// x -> beta x mod 1, normalized so its integral over [0,1] is 1. Piecewise
/// constant between sorted orbit points.
class ParryMeasure {
public:
    /// n_terms = 0 selects K(beta).
    explicit ParryMeasure(double beta, std::size_t n_terms = 0);

    double beta() const noexcept { return beta_; }
    std::span<const double> orbit() const noexcept { return orbit_; }
    double normalization() const noexcept { return normalization_; }

    /// Sorted breakpoints 0 = b_0 < ... < b_m = 1; density() is constant on
    /// [b_i, b_{i+1}) with value levels()[i].
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> levels() const noexcept { return levels_; }

    double density(double x) const;
    double cdf(double x) const;
    /// Inverse of cdf on [0, 1).
    double quantile(double u) const;

private:
    double beta_;
    std::vector<double> orbit_;
    double normalization_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<double> levels_;
    std::vector<double> cumulative_;
};

/// Density value at x in [0, 1).
double parry_density(double x, double beta, std::size_t n_terms = 0);

/// x -> beta x mod 1 on [0, 1).
double beta_map(double x, double beta) noexcept;

/// Digits floor(beta T^{k-1} x0) of an orbit whose start x0 is drawn from the
/// Parry density. The result is strictly admissible; a stream that fails the
/// check (possible only through rounding) is redrawn from a derived seed.
DigitString sample_parry(double beta, std::size_t length, std::uint64_t seed);
DigitString sample_parry(const ParryMeasure& measure, std::size_t length, std::uint64_t seed);

/// Empirical k-block entropy rate (1/k) * -Sum p ln p over overlapping blocks,
/// in nats. Requires 1 <= k <= 63 and k <= d.size().
double block_entropy(const DigitString& d, std::size_t k);

struct EntropyReport {
    std::size_t block_len = 0;
    std::size_t sample_len = 0;
    double block_entropy_rate = 0.0;
    double target = 0.0;  // ln beta
    std::vector<std::string> warnings;
};

/// block_entropy plus the ln beta target; warns below the recommended
/// sample length 100 * count_words(beta, k).
EntropyReport entropy_report(double beta, const DigitString& d, std::size_t k);

/// ln(count_words(beta, n + 1) / count_words(beta, n)).
double topological_entropy_estimate(double beta, std::size_t n);

/// h (1/ln beta + 1/ln(1/tau)), the dimension an ergodic measure of entropy
/// h receives from the two Lyapunov exponents.
double ly_dimension(const Params& params, double h);

/// Result of comparing sampled x-values against the Parry CDF.
struct InvarianceCheck {
    std::size_t steps = 0;
    double orbit_cdf_deviation = 0.0;  // one Parry-started orbit of `steps` iterates
    double push_cdf_deviation = 0.0;   // `steps` independent draws pushed once through T
    double histogram_density_deviation = 0.0;  // informational, binned density scale
    std::size_t bins = 0;
};

/// Sup over bin edges of |empirical CDF - Parry CDF|, for a long orbit and for
/// one-step images of independent draws.
InvarianceCheck density_invariance(double beta, std::size_t steps, std::uint64_t seed,
                                   std::size_t bins = 1000);

/// pi-images of `count` independent Parry windows of width 2 K(beta): a sample
/// of nu_beta on the attractor.
PointCloud nu_beta_cloud(const Params& params, std::size_t count, std::uint64_t seed);

struct LocalDimensionEstimate {
    double dimension = 0.0;
    std::size_t centers_used = 0;
    std::vector<std::string> warnings;
};

/// Median over randomly chosen cloud points of the least-squares slope of
/// ln(fraction of points in the sup-norm ball B_r) against ln r. Radii whose
/// ball holds fewer than `min_ball_count` points are dropped for that centre.
LocalDimensionEstimate local_dimension_estimate(const PointCloud& cloud, std::size_t center_count,
                                                std::span<const double> radii, std::uint64_t seed,
                                                std::size_t min_ball_count = 5);

}  // namespace betafrac
