#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cobex {

inline constexpr int kMaxVariables = 20;

/// Joint probability distribution over n binary propositional variables.
/// probs()[mask] is the probability of the assignment where bit i of mask
/// set means variable R_{i+1} is true. Normalized on construction.
class JointDistribution {
public:
    /// Validates and normalizes a dense table of 2^n entries. The raw sum
    /// may deviate from 1 by at most 1e-6 before normalization.
    static JointDistribution from_table(int n, std::vector<double> probs);

    /// Exact route: per-mask integer numerators over a common denominator.
    /// The grid constructor uses this so downstream weight vectors can be
    /// reduced in integer arithmetic.
    static JointDistribution from_counts(int n, std::vector<std::uint64_t> counts,
                                         std::uint64_t denominator);

    int var_count() const { return n_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(std::uint32_t mask) const { return probs_[mask]; }

    bool has_exact_counts() const { return exact_.has_value(); }
    const std::vector<std::uint64_t>& exact_counts() const { return exact_->counts; }
    std::uint64_t exact_denominator() const { return exact_->denominator; }

    /// Marginal over the first n-1 variables (sums out the last one).
    /// Preserves the exact integer representation when present.
    JointDistribution drop_last() const;

private:
    struct Exact {
        std::vector<std::uint64_t> counts;
        std::uint64_t denominator = 0;
    };

    JointDistribution(int n, std::vector<double> probs, std::optional<Exact> exact);

    int n_;
    std::vector<double> probs_;
    std::optional<Exact> exact_;
};

/// <a_0, ..., a_n>: probability mass grouped by the number of false
/// propositions in the assignment. a(0) is the expectation measure, the
/// prior probability that the whole information set is true.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> coeffs);

    int set_size() const { return static_cast<int>(a_.size()) - 1; }
    double a(int i) const { return a_[static_cast<std::size_t>(i)]; }
    double a0() const { return a_[0]; }
    const std::vector<double>& coeffs() const { return a_; }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> a_;
};

/// Source reliability pair with P(report | true) = p and
/// P(report | false) = q, constrained to p > q > 0.
class ReliabilityParams {
public:
    ReliabilityParams(double p, double q);

    double p() const { return p_; }
    double q() const { return q_; }
    double likelihood_ratio() const { return q_ / p_; }
    double reliability() const { return 1.0 - q_ / p_; }

private:
    double p_;
    double q_;
};

/// Reduces a joint distribution to its weight vector: a[i] sums the
/// probabilities of all assignments with exactly i false variables.
WeightVector weight_vector(const JointDistribution& d);

/// 1-based inclusive cell range on a grid.
struct Interval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

/// Number of grid cells covered by exactly the intervals in each bitmask
/// region of the Venn partition. Sums to `cells`.
std::vector<std::uint64_t> grid_region_counts(std::uint64_t cells,
                                              const std::vector<Interval>& intervals);

/// Uniform prior over `cells` grid cells; R_i = "target lies in interval i".
JointDistribution grid_overlap_distribution(std::uint64_t cells,
                                            const std::vector<Interval>& intervals);

}  // namespace cobex
