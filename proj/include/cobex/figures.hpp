#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobex/bayesnet.hpp"
#include "cobex/distribution.hpp"

namespace cobex {

/// Per-source reliability pair for network construction. Unlike
/// ReliabilityParams this admits p == q (a randomizer source) as an
/// explicit relaxation of the report model; p < q is rejected.
struct SourceParams {
    double p = 0.0;
    double q = 0.0;
};

/// Dependence edge added on top of the independent-report structure.
/// `to` must be a report node; `from` an R node of another proposition or
/// another report node. The target's CPT must then be supplied in full
/// via FigureSpec::cpt_overrides.
struct ExtraEdge {
    std::string from;
    std::string to;
};

/// One source reporting on two propositions: a single report node with
/// both R parents and a user-supplied CPT.
struct SharedSource {
    int first = 0;   // 1-based proposition index
    int second = 0;
};

/// Recipe for the coherence / expansion networks. `sources` holds either
/// one entry shared by every source or one entry per proposition.
/// cpt_overrides maps a report node name to its full CPT (indexed by the
/// node's final parent list, first parent = lowest bit); an override is
/// required exactly for nodes whose parent set grew beyond the default.
struct FigureSpec {
    JointDistribution base;
    std::vector<SourceParams> sources;
    std::vector<ExtraEdge> extra_edges;
    std::vector<SharedSource> shared_sources;
    std::map<std::string, std::vector<double>> cpt_overrides;
};

using FigureOneSpec = FigureSpec;
using FigureTwoSpec = FigureSpec;

std::string r_name(int i);                          // "R3"
std::string report_name(int i);                     // "REPR3"
std::string shared_report_name(int i, int j);       // "REPR2_5"
std::string conjunction_reporter_name(int i);       // "REPC3"

inline constexpr const char* kConjunctionName = "C";
inline constexpr const char* kOldConjunctionName = "C_OLD";
inline constexpr const char* kNewConjunctionName = "C_NEW";

/// True when the spec departs from the idealized model (unequal or
/// randomizer sources, extra edges, shared sources); the closed-form
/// route through weight vectors then no longer applies.
bool is_relaxed(const FigureSpec& spec);

/// Report-node names of the spec's network in proposition order; shared
/// nodes appear once, at the position of their first proposition.
std::vector<std::string> report_node_names(const FigureSpec& spec);

/// Coherence network: R nodes encoding the base joint (chain
/// factorization), a report node per source, a conjunction node C over
/// all propositions, and one counterfactual conjunction-report node per
/// source so the maximal-coherence posterior can be read off. The
/// counterfactual layer is omitted when shared sources are present (no
/// per-source reliability exists for them).
BayesNet build_figure_one(const FigureOneSpec& spec);

/// Expansion network over n+1 propositions: R and report nodes as in the
/// coherence network plus conjunction nodes C_OLD (first n propositions)
/// and C_NEW (all of them). Shared sources must pair propositions of the
/// old set.
BayesNet build_figure_two(const FigureTwoSpec& spec);

struct FigureOneReadoff {
    double prior = 0.0;      // P(C), the expectation measure
    double posterior = 0.0;  // P(C | every report instantiated)
    std::optional<double> max_posterior;  // P(C | every conjunction report)
    std::optional<double> coherence;      // posterior / max_posterior
    bool relaxed = false;
};
FigureOneReadoff figure_one_readoff(const FigureOneSpec& spec);

struct FigureTwoReadoff {
    double value_old = 0.0;  // P(C_OLD | reports on the old set)
    double value_new = 0.0;  // P(C_NEW | all reports)
    bool accept = false;
    bool relaxed = false;
};
FigureTwoReadoff figure_two_readoff(const FigureTwoSpec& spec);

}  // namespace cobex
