#pragma once

#include <optional>

#include "cobex/distribution.hpp"

namespace cobex {

enum class ExpansionMode {
    FixedX,    // acceptance at a known likelihood ratio
    Averaged,  // acceptance integrated over reliability ignorance
};

inline constexpr double kDefaultBeliefThreshold = 0.5;

/// Decision record for a proposed expansion from n to n+1 propositions.
struct ExpansionVerdict {
    bool accept = false;
    double value_old = 0.0;
    double value_new = 0.0;
    ExpansionMode mode = ExpansionMode::FixedX;
    std::optional<double> x;  // set in fixed-x mode
    bool threshold_met = false;
};

/// Acceptance measure e_x = a_0 / sum_i a_i x^i; the posterior confidence
/// reused as an expansion criterion.
double acceptance(const WeightVector& w, double x);

/// e_x factored as weight * coherence, where the weight is what a
/// maximally coherent counterpart would score.
struct WeightedAcceptance {
    double weight = 0.0;
    double coherence = 0.0;
    double product = 0.0;
};
WeightedAcceptance acceptance_weighted_form(const WeightVector& w, double x);

/// E = integral of e_x over x in [0, 1], modelling uniform ignorance about
/// the reliability of the sources. The integrand extends continuously to
/// the endpoints: 1 at x = 0 (0 when a_0 = 0) and a_0 at x = 1.
double averaged_acceptance(const WeightVector& w);

/// Accept the new set iff its acceptance value is at least the old one
/// under the chosen mode. threshold_met reports whether the old set sits
/// at or above the belief threshold; it does not gate the verdict.
ExpansionVerdict decide_expansion(const WeightVector& w_old, const WeightVector& w_new,
                                  ExpansionMode mode, std::optional<double> x = {},
                                  double threshold = kDefaultBeliefThreshold);

}  // namespace cobex
