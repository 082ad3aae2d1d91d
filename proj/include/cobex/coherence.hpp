#pragma once

#include "cobex/distribution.hpp"

namespace cobex {

/// Reliability-relative coherence of an information set at likelihood
/// ratio x: the ratio of the actual posterior confidence to the posterior
/// a maximally coherent (coextensive) counterpart with the same
/// expectation measure would reach.
struct CoherenceValue {
    double c = 0.0;
    double x = 0.0;
    int n = 0;
};

enum class Relation {
    FirstMoreCoherent,
    SecondMoreCoherent,
    Equal,
    Incomparable,
};

enum class Criterion {
    PairCriterion,      // necessary and sufficient rule for two-proposition sets
    GeneralSufficient,  // sufficient rule for general n
    GridProbe,          // numeric sign scan; evidence, not proof
};

struct OrderingVerdict {
    Relation relation = Relation::Incomparable;
    Criterion criterion = Criterion::GridProbe;
};

const char* to_string(Relation r);
const char* to_string(Criterion c);

/// Sum_i a_i x^i. Returns 1 exactly at x = 1 (weight vectors are
/// normalized by invariant).
double weight_poly(const WeightVector& w, double x);

/// Posterior joint confidence after all reports: a_0 / sum_i a_i x^i.
/// Requires 0 < x <= 1; x = 1 is the randomizer limit and returns a_0.
double posterior_confidence(const WeightVector& w, double x);

/// Posterior the set would reach were it maximally coherent:
/// a_0 / (a_0 + (1 - a_0) x^n).
double max_coherence_posterior(double a0, int n, double x);

/// c_x = (a_0 + (1 - a_0) x^n) / sum_i a_i x^i. Undefined for a_0 = 0.
CoherenceValue coherence_measure(const WeightVector& w, double x);

/// Necessary-and-sufficient ordering rule for two-proposition sets.
/// Direction of a comparable verdict comes from a probe evaluation at
/// x = 1/2 (the sign is constant in x whenever the rule admits the pair).
OrderingVerdict compare_pair(const WeightVector& w, const WeightVector& w_other);

/// Sufficient ordering rule for general n; falls back to grid_probe at
/// the given resolution when the rule does not fire. The verdict records
/// which rule decided.
OrderingVerdict compare_general(const WeightVector& w, const WeightVector& w_other,
                                int probe_resolution = 999);

/// Evaluates c_x - c_x' on the interior grid x = k / (resolution + 1) and
/// reports a comparable verdict only when every difference beyond 1e-12
/// has the same sign. Resolution-bounded evidence, not a proof.
OrderingVerdict grid_probe(const WeightVector& w, const WeightVector& w_other,
                           int resolution = 999);

}  // namespace cobex
