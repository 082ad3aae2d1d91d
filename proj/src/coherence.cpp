#include "cobex/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace cobex {
namespace {

constexpr double kSignTol = 1e-12;

void check_ratio(double x) {
    if (!(x > 0.0 && x <= 1.0))
        throw std::invalid_argument("likelihood ratio x must be in (0, 1]");
}

void check_expectation(double a0) {
    if (a0 <= 0.0) throw std::domain_error("coherence undefined: zero expectation measure");
}

// x^k by repeated multiplication; deterministic across libm implementations.
double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double coherence_or_throw(const WeightVector& w, double x) {
    return coherence_measure(w, x).c;
}

// Sign of c_x - c_x' at x = 1/2, with fallback probes so that two sets
// whose coherence functions coincide report Equal rather than an
// arbitrary direction.
Relation probe_direction(const WeightVector& w, const WeightVector& w_other) {
    for (double x : {0.5, 0.25, 0.75}) {
        const double d = coherence_or_throw(w, x) - coherence_or_throw(w_other, x);
        if (d > kSignTol) return Relation::FirstMoreCoherent;
        if (d < -kSignTol) return Relation::SecondMoreCoherent;
    }
    return Relation::Equal;
}

void check_same_size(const WeightVector& w, const WeightVector& w_other) {
    if (w.set_size() != w_other.set_size())
        throw std::invalid_argument("incomparable sizes: weight vectors must have equal n");
}

bool identical(const WeightVector& w, const WeightVector& w_other) {
    for (int i = 0; i <= w.set_size(); ++i)
        if (std::abs(w.a(i) - w_other.a(i)) > 1e-15) return false;
    return true;
}

}  // namespace

const char* to_string(Relation r) {
    switch (r) {
        case Relation::FirstMoreCoherent: return "first-more-coherent";
        case Relation::SecondMoreCoherent: return "second-more-coherent";
        case Relation::Equal: return "equal";
        case Relation::Incomparable: return "incomparable";
    }
    return "?";
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::PairCriterion: return "pair-criterion";
        case Criterion::GeneralSufficient: return "general-sufficient";
        case Criterion::GridProbe: return "grid-probe";
    }
    return "?";
}

double weight_poly(const WeightVector& w, double x) {
    if (x == 1.0) return 1.0;
    double s = 0.0;
    for (int i = w.set_size(); i >= 0; --i) s = s * x + w.a(i);
    return s;
}

double posterior_confidence(const WeightVector& w, double x) {
    check_ratio(x);
    const double den = weight_poly(w, x);
    if (den == 0.0) throw std::domain_error("degenerate distribution: zero denominator");
    return w.a0() / den;
}

double max_coherence_posterior(double a0, int n, double x) {
    check_ratio(x);
    if (n < 1) throw std::invalid_argument("set size must be at least 1");
    if (a0 > 1.0 || !std::isfinite(a0))
        throw std::invalid_argument("expectation measure must lie in (0, 1]");
    check_expectation(a0);
    return a0 / (a0 + (1.0 - a0) * ipow(x, n));
}

CoherenceValue coherence_measure(const WeightVector& w, double x) {
    check_ratio(x);
    check_expectation(w.a0());
    const int n = w.set_size();
    const double num = w.a0() + (1.0 - w.a0()) * ipow(x, n);
    const double c = num / weight_poly(w, x);
    return CoherenceValue{c, x, n};
}

OrderingVerdict compare_pair(const WeightVector& w, const WeightVector& w_other) {
    check_same_size(w, w_other);
    if (w.set_size() != 2)
        throw std::invalid_argument("pair criterion requires two-proposition sets");
    check_expectation(w.a0());
    check_expectation(w_other.a0());
    if (identical(w, w_other)) return {Relation::Equal, Criterion::PairCriterion};

    // Cross-multiplied: (i) a0/a0' <= a1/a1' and a1 >= a1',
    //                  (ii) a0/a0' >= a1/a1' and a1 <= a1'.
    const double lhs = w.a0() * w_other.a(1);
    const double rhs = w_other.a0() * w.a(1);
    const bool cond_i = lhs <= rhs && w.a(1) >= w_other.a(1);
    const bool cond_ii = lhs >= rhs && w.a(1) <= w_other.a(1);
    if (!cond_i && !cond_ii) return {Relation::Incomparable, Criterion::PairCriterion};
    return {probe_direction(w, w_other), Criterion::PairCriterion};
}

OrderingVerdict compare_general(const WeightVector& w, const WeightVector& w_other,
                                int probe_resolution) {
    check_same_size(w, w_other);
    if (w.set_size() < 2)
        throw std::invalid_argument("general criterion requires n >= 2");
    check_expectation(w.a0());
    check_expectation(w_other.a0());
    if (identical(w, w_other)) return {Relation::Equal, Criterion::GeneralSufficient};

    // (i) a_i/a_i' < a0/a0' < 1 or (ii) a_i/a_i' > a0/a0' > 1 for
    // i = 1..n-1, cross-multiplied; an all-zero pair at position i
    // contributes identically to both measures and passes.
    const double a0 = w.a0(), b0 = w_other.a0();
    bool cond_i = a0 < b0;
    bool cond_ii = a0 > b0;
    for (int i = 1; i < w.set_size() && (cond_i || cond_ii); ++i) {
        const double ai = w.a(i), bi = w_other.a(i);
        if (ai == 0.0 && bi == 0.0) continue;
        cond_i = cond_i && ai * b0 < a0 * bi;
        cond_ii = cond_ii && ai * b0 > a0 * bi;
    }
    if (cond_i || cond_ii)
        return {probe_direction(w, w_other), Criterion::GeneralSufficient};
    return grid_probe(w, w_other, probe_resolution);
}

OrderingVerdict grid_probe(const WeightVector& w, const WeightVector& w_other,
                           int resolution) {
    check_same_size(w, w_other);
    if (resolution < 99) throw std::invalid_argument("probe resolution must be >= 99");
    check_expectation(w.a0());
    check_expectation(w_other.a0());

    bool positive = false, negative = false;
    for (int k = 1; k <= resolution; ++k) {
        const double x = k / (resolution + 1.0);
        const double d = coherence_or_throw(w, x) - coherence_or_throw(w_other, x);
        positive = positive || d > kSignTol;
        negative = negative || d < -kSignTol;
        if (positive && negative) return {Relation::Incomparable, Criterion::GridProbe};
    }
    if (positive) return {Relation::FirstMoreCoherent, Criterion::GridProbe};
    if (negative) return {Relation::SecondMoreCoherent, Criterion::GridProbe};
    return {Relation::Equal, Criterion::GridProbe};
}

}  // namespace cobex
