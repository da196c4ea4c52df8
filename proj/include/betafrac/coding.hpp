#pragma once

// The coding map pi from symbol windows to the plane, with numerical
// certificates for the conjugacy f o pi = pi o sigma, injectivity of the
// coding, Cantor-fibre membership and symbolic mixing gaps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "betafrac/beta_symbolic.hpp"
#include "betafrac/params.hpp"
#include "betafrac/skew_system.hpp"

namespace betafrac {

struct CantorParams {
    double tau;
    std::size_t depth;

    CantorParams(double tau, std::size_t depth);
};

/// pi(s) = (Sum_{k>=1} s_{-k} beta^-k, Sum_{k>=0} s_k (1 - tau) tau^k), both
/// series cut at K(beta) terms. Throws std::invalid_argument unless the
/// window is closure-admissible.
Point2 pi_coding(const SymbolWindow& w, const Params& params);

struct ConjugacyResult {
    /// Set when the window falls outside the set where the identity is
    /// claimed: the all-zero window, or a past sum within
    /// kAdmissibilityTolerance of the branch point 1/beta.
    std::optional<std::string> excluded;
    double residual = 0.0;
    /// true when the past sum exceeds 1/beta (second branch of f).
    bool second_branch = false;
};

/// Sup-norm distance between f(pi(w)) and pi(sigma(w)).
ConjugacyResult check_conjugacy(const SymbolWindow& w, const Params& params);

/// Sup-norm distance between pi(a) and pi(b). Both windows must be strictly
/// admissible (std::invalid_argument otherwise).
double check_injectivity(const SymbolWindow& a, const SymbolWindow& b, const Params& params);

/// Whether y lies within kAdmissibilityTolerance of a depth-`depth` cylinder
/// interval [c, c + tau^depth] of the Cantor set C_tau.
bool in_cantor(double y, const CantorParams& cp);

struct MixingGap {
    /// Least N with every n in (N, n_max] realized; empty if some n near
    /// n_max still fails.
    std::optional<std::size_t> gap;
    std::size_t n_max = 0;
};

/// Words are laid out at consecutive indices: wordA from 0, wordB from n.
/// A placement is realized when the zero-padded window holding both words
/// is strictly admissible; zero padding is the minimal filling, so no other
/// filling can succeed where it fails. Throws std::invalid_argument unless
/// both words are strictly admissible as windows.
MixingGap cylinder_mixing_gap(const DigitString& word_a, const DigitString& word_b, double beta,
                              std::size_t n_max);

/// Strictly admissible window of `width` indices centred at 0, read off a
/// Parry-distributed digit stream (reversed, so the past carries the
/// forward expansion). Throws std::invalid_argument if width > 2 K(beta).
SymbolWindow sample_admissible(double beta, std::size_t width, std::uint64_t seed);

class ParryMeasure;
/// Same stream with a prebuilt density table.
SymbolWindow sample_admissible(const ParryMeasure& measure, std::size_t width, std::uint64_t seed);

}  // namespace betafrac
