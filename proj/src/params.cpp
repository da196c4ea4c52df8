#include "betafrac/params.hpp"

#include <sstream>

namespace betafrac {

void require_beta(double beta) {
    if (!(beta > 1.0 && beta < 2.0)) {
        std::ostringstream msg;
        msg << "beta must lie in (1, 2), got " << beta;
        throw std::domain_error(msg.str());
    }
}

void require_tau(double tau) {
    if (!(tau > 0.0 && tau < 0.5)) {
        std::ostringstream msg;
        msg << "tau must lie in (0, 0.5), got " << tau;
        throw std::domain_error(msg.str());
    }
}

Params::Params(double beta, double tau) : beta_(beta), tau_(tau) {
    require_beta(beta);
    require_tau(tau);
}

std::size_t truncation_depth(double beta) {
    require_beta(beta);
    return static_cast<std::size_t>(std::ceil(36.0 * std::numbers::ln2 / std::log(beta)));
}

}  // namespace betafrac
