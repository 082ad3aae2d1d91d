#include "cobex/expansion.hpp"

#include <stdexcept>

#include "cobex/coherence.hpp"
#include "cobex/quadrature.hpp"

namespace cobex {
namespace {

constexpr double kQuadratureTol = 1e-9;

}  // namespace

double acceptance(const WeightVector& w, double x) { return posterior_confidence(w, x); }

WeightedAcceptance acceptance_weighted_form(const WeightVector& w, double x) {
    const double weight = max_coherence_posterior(w.a0(), w.set_size(), x);
    const double c = coherence_measure(w, x).c;
    return WeightedAcceptance{weight, c, weight * c};
}

double averaged_acceptance(const WeightVector& w) {
    const double a0 = w.a0();
    auto e = [&](double x) {
        if (x == 0.0) return a0 > 0.0 ? 1.0 : 0.0;
        if (x == 1.0) return a0;
        return a0 / weight_poly(w, x);
    };
    return adaptive_simpson(e, 0.0, 1.0, kQuadratureTol);
}

ExpansionVerdict decide_expansion(const WeightVector& w_old, const WeightVector& w_new,
                                  ExpansionMode mode, std::optional<double> x,
                                  double threshold) {
    if (w_new.set_size() != w_old.set_size() + 1)
        throw std::invalid_argument(
            "expansion requires exactly one additional proposition");
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("belief threshold must lie in [0, 1]");

    ExpansionVerdict v;
    v.mode = mode;
    if (mode == ExpansionMode::FixedX) {
        if (!x) throw std::invalid_argument("fixed-x mode requires a likelihood ratio");
        v.x = x;
        v.value_old = acceptance(w_old, *x);
        v.value_new = acceptance(w_new, *x);
    } else {
        if (x) throw std::invalid_argument("averaged mode takes no likelihood ratio");
        v.value_old = averaged_acceptance(w_old);
        v.value_new = averaged_acceptance(w_new);
    }
    v.accept = v.value_new >= v.value_old;
    v.threshold_met = v.value_old >= threshold;
    return v;
}

}  // namespace cobex
