#include "cobex/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cobex {
namespace {

constexpr double kPreNormalizationTol = 1e-6;
constexpr double kWeightSumTol = 1e-9;

// Neumaier-compensated sum; keeps normalization honest for 2^20 entries.
double compensated_sum(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

void check_var_count(int n) {
    if (n < 1 || n > kMaxVariables)
        throw std::invalid_argument("variable count must be in [1, " +
                                    std::to_string(kMaxVariables) + "], got " +
                                    std::to_string(n));
}

}  // namespace

JointDistribution::JointDistribution(int n, std::vector<double> probs,
                                     std::optional<Exact> exact)
    : n_(n), probs_(std::move(probs)), exact_(std::move(exact)) {}

JointDistribution JointDistribution::from_table(int n, std::vector<double> probs) {
    check_var_count(n);
    const std::size_t expected = std::size_t{1} << n;
    if (probs.size() != expected)
        throw std::invalid_argument("table must have 2^n = " + std::to_string(expected) +
                                    " entries, got " + std::to_string(probs.size()));
    for (double p : probs) {
        if (!std::isfinite(p)) throw std::invalid_argument("non-finite table entry");
        if (p < 0.0) throw std::invalid_argument("negative table entry");
    }
    const double sum = compensated_sum(probs);
    if (std::abs(sum - 1.0) > kPreNormalizationTol)
        throw std::invalid_argument("unnormalized table: entries sum to " +
                                    std::to_string(sum));
    if (sum != 1.0)
        for (double& p : probs) p /= sum;
    return JointDistribution(n, std::move(probs), std::nullopt);
}

JointDistribution JointDistribution::from_counts(int n, std::vector<std::uint64_t> counts,
                                                 std::uint64_t denominator) {
    check_var_count(n);
    const std::size_t expected = std::size_t{1} << n;
    if (counts.size() != expected)
        throw std::invalid_argument("count table must have 2^n entries");
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total != denominator)
        throw std::invalid_argument("counts must sum to the denominator");
    std::vector<double> probs(counts.size());
    const double den = static_cast<double>(denominator);
    for (std::size_t m = 0; m < counts.size(); ++m)
        probs[m] = static_cast<double>(counts[m]) / den;
    return JointDistribution(n, std::move(probs), Exact{std::move(counts), denominator});
}

JointDistribution JointDistribution::drop_last() const {
    if (n_ < 2)
        throw std::invalid_argument("cannot marginalize a single-variable distribution");
    const std::size_t half = std::size_t{1} << (n_ - 1);
    std::vector<double> probs(half);
    for (std::size_t m = 0; m < half; ++m) probs[m] = probs_[m] + probs_[m + half];
    std::optional<Exact> exact;
    if (exact_) {
        std::vector<std::uint64_t> counts(half);
        for (std::size_t m = 0; m < half; ++m)
            counts[m] = exact_->counts[m] + exact_->counts[m + half];
        // keep the marginal consistent with the exact route
        const double den = static_cast<double>(exact_->denominator);
        for (std::size_t m = 0; m < half; ++m)
            probs[m] = static_cast<double>(counts[m]) / den;
        exact = Exact{std::move(counts), exact_->denominator};
    }
    return JointDistribution(n_ - 1, std::move(probs), std::move(exact));
}

WeightVector::WeightVector(std::vector<double> coeffs) : a_(std::move(coeffs)) {
    if (a_.size() < 2) throw std::invalid_argument("weight vector needs n >= 1");
    for (double v : a_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0 + 1e-12)
            throw std::invalid_argument("weight outside [0, 1]");
    }
    if (std::abs(compensated_sum(a_) - 1.0) > kWeightSumTol)
        throw std::invalid_argument("weights must sum to 1");
}

ReliabilityParams::ReliabilityParams(double p, double q) : p_(p), q_(q) {
    if (!std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("non-finite reliability parameter");
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("requires 0 < p <= 1");
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("requires 0 < q < 1");
    if (p <= q) throw std::invalid_argument("requires p > q");
}

WeightVector weight_vector(const JointDistribution& d) {
    const int n = d.var_count();
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
    if (d.has_exact_counts()) {
        std::vector<std::uint64_t> class_counts(a.size(), 0);
        for (std::size_t m = 0; m < size; ++m)
            class_counts[static_cast<std::size_t>(n) - std::popcount(m)] +=
                d.exact_counts()[m];
        const double den = static_cast<double>(d.exact_denominator());
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = static_cast<double>(class_counts[i]) / den;
        return WeightVector(std::move(a));
    }
    // compensated per class: classes can gather up to C(20,10) terms
    std::vector<double> comp(a.size(), 0.0);
    for (std::size_t m = 0; m < size; ++m) {
        const std::size_t i = static_cast<std::size_t>(n) - std::popcount(m);
        const double x = d.probs()[m];
        const double t = a[i] + x;
        comp[i] += std::abs(a[i]) >= std::abs(x) ? (a[i] - t) + x : (x - t) + a[i];
        a[i] = t;
    }
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += comp[i];
    return WeightVector(std::move(a));
}

std::vector<std::uint64_t> grid_region_counts(std::uint64_t cells,
                                              const std::vector<Interval>& intervals) {
    if (cells < 1) throw std::invalid_argument("grid needs at least one cell");
    const int n = static_cast<int>(intervals.size());
    check_var_count(n);
    for (const Interval& iv : intervals) {
        if (iv.lo < 1 || iv.hi > cells)
            throw std::invalid_argument("interval out of range [1, cells]");
        if (iv.lo > iv.hi) throw std::invalid_argument("empty interval");
    }
    // Sweep over breakpoints: within [b_k, b_{k+1}) the covering mask is constant.
    std::vector<std::uint64_t> bounds{1, cells + 1};
    for (const Interval& iv : intervals) {
        bounds.push_back(iv.lo);
        bounds.push_back(iv.hi + 1);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    std::vector<std::uint64_t> counts(std::size_t{1} << n, 0);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const std::uint64_t cell = bounds[k];
        if (cell > cells) break;
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (intervals[static_cast<std::size_t>(i)].lo <= cell &&
                cell <= intervals[static_cast<std::size_t>(i)].hi)
                mask |= 1u << i;
        counts[mask] += bounds[k + 1] - cell;
    }
    return counts;
}

JointDistribution grid_overlap_distribution(std::uint64_t cells,
                                            const std::vector<Interval>& intervals) {
    return JointDistribution::from_counts(static_cast<int>(intervals.size()),
                                          grid_region_counts(cells, intervals), cells);
}

}  // namespace cobex
