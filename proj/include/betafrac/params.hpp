#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace betafrac {

/// Tolerance for the "<= 1" admissibility comparison, the branch point and
/// Cantor membership. One boundary policy everywhere.
inline constexpr double kAdmissibilityTolerance = 1e-12;

inline constexpr double kGoldenRatio = std::numbers::phi;

/// Raised when a size or depth exceeds a configured enumeration bound.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks 1 < beta < 2 and throws std::domain_error otherwise.
void require_beta(double beta);

/// Checks 0 < tau < 0.5 and throws std::domain_error otherwise.
void require_tau(double tau);

/// The parameter pair of the skew product. Always valid once constructed.
class Params {
public:
    Params(double beta, double tau);

    double beta() const noexcept { return beta_; }
    double tau() const noexcept { return tau_; }

    friend bool operator==(const Params&, const Params&) = default;

private:
    double beta_;
    double tau_;
};

/// Series depth K(beta) = ceil(36 ln 2 / ln beta); the geometric tail past K
/// is below 2^-36.
std::size_t truncation_depth(double beta);

}  // namespace betafrac
