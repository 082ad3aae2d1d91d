#include "cobex/figures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cobex {
namespace {

using NodeSpec = BayesNet::NodeSpec;

// Chain factorization of the joint: R_i's parents are R_1..R_{i-1}, so
// any joint is encoded exactly. Unreachable conditioning contexts get a
// neutral 0.5.
std::vector<NodeSpec> chain_specs(const JointDistribution& d) {
    const int n = d.var_count();
    std::vector<NodeSpec> specs(static_cast<std::size_t>(n));
    std::vector<double> marg = d.probs();
    for (int i = n; i >= 1; --i) {
        const std::size_t half = std::size_t{1} << (i - 1);
        NodeSpec& spec = specs[static_cast<std::size_t>(i - 1)];
        spec.name = r_name(i);
        for (int j = 1; j < i; ++j) spec.parents.push_back(r_name(j));
        spec.cpt.resize(half);
        std::vector<double> next(half);
        for (std::size_t pmask = 0; pmask < half; ++pmask) {
            const double p0 = marg[pmask];
            const double p1 = marg[pmask | half];
            const double tot = p0 + p1;
            spec.cpt[pmask] = tot > 0.0 ? p1 / tot : 0.5;
            next[pmask] = tot;
        }
        marg = std::move(next);
    }
    return specs;
}

void check_sources(const FigureSpec& spec, int n) {
    const std::size_t count = spec.sources.size();
    if (count != 1 && count != static_cast<std::size_t>(n))
        throw std::invalid_argument(
            "sources must hold one shared entry or one per proposition");
    for (const SourceParams& s : spec.sources) {
        if (!std::isfinite(s.p) || !std::isfinite(s.q))
            throw std::invalid_argument("non-finite reliability parameter");
        if (s.p <= 0.0 || s.p > 1.0) throw std::invalid_argument("requires 0 < p <= 1");
        if (s.q <= 0.0 || s.q >= 1.0) throw std::invalid_argument("requires 0 < q < 1");
        if (s.p < s.q)
            throw std::invalid_argument("requires p >= q (p > q outside relaxations)");
    }
}

const SourceParams& source_for(const FigureSpec& spec, int i) {
    return spec.sources.size() == 1 ? spec.sources[0]
                                    : spec.sources[static_cast<std::size_t>(i - 1)];
}

// proposition -> report node name; shared pairs collapse to one node
std::vector<std::string> report_names_checked(const FigureSpec& spec, int n,
                                              int shared_limit) {
    std::vector<std::string> names(static_cast<std::size_t>(n));
    std::set<int> taken;
    for (const SharedSource& s : spec.shared_sources) {
        if (s.first < 1 || s.first > shared_limit || s.second < 1 ||
            s.second > shared_limit || s.first == s.second)
            throw std::invalid_argument("invalid shared-source proposition pair");
        if (!taken.insert(s.first).second || !taken.insert(s.second).second)
            throw std::invalid_argument("proposition reported by two shared sources");
        const int lo = std::min(s.first, s.second);
        const int hi = std::max(s.first, s.second);
        names[static_cast<std::size_t>(lo - 1)] = shared_report_name(lo, hi);
        names[static_cast<std::size_t>(hi - 1)] = shared_report_name(lo, hi);
    }
    for (int i = 1; i <= n; ++i) {
        auto& slot = names[static_cast<std::size_t>(i - 1)];
        if (slot.empty()) slot = report_name(i);
    }
    return names;
}

std::vector<NodeSpec> report_specs(const FigureSpec& spec, int n, int shared_limit) {
    const std::vector<std::string> names = report_names_checked(spec, n, shared_limit);

    // default structure first
    std::vector<NodeSpec> specs;
    std::set<std::string> emitted;
    for (int i = 1; i <= n; ++i) {
        const std::string& name = names[static_cast<std::size_t>(i - 1)];
        if (!emitted.insert(name).second) continue;  // shared node, second leg
        NodeSpec node;
        node.name = name;
        node.parents.push_back(r_name(i));
        if (name != report_name(i)) {
            // shared node: second R parent; CPT must be supplied
            for (int j = i + 1; j <= n; ++j)
                if (names[static_cast<std::size_t>(j - 1)] == name)
                    node.parents.push_back(r_name(j));
        } else {
            const SourceParams& s = source_for(spec, i);
            node.cpt = {s.q, s.p};
        }
        specs.push_back(std::move(node));
    }

    // dependence edges append parents in declaration order
    for (const ExtraEdge& e : spec.extra_edges) {
        auto it = std::find_if(specs.begin(), specs.end(),
                               [&](const NodeSpec& s) { return s.name == e.to; });
        if (it == specs.end())
            throw std::invalid_argument("extra edge target must be a report node: " +
                                        e.to);
        const bool from_is_report =
            std::any_of(specs.begin(), specs.end(),
                        [&](const NodeSpec& s) { return s.name == e.from; });
        bool from_is_r = false;
        for (int i = 1; i <= n && !from_is_r; ++i) from_is_r = e.from == r_name(i);
        if (!from_is_report && !from_is_r)
            throw std::invalid_argument("unknown extra edge source: " + e.from);
        if (e.from == e.to) throw std::invalid_argument("self edge: " + e.from);
        if (std::find(it->parents.begin(), it->parents.end(), e.from) !=
            it->parents.end())
            throw std::invalid_argument("edge already present: " + e.from + " -> " + e.to);
        it->parents.push_back(e.from);
    }

    // overrides are required exactly where the structure is non-default
    std::set<std::string> needs_override;
    for (NodeSpec& node : specs)
        if (node.parents.size() > 1 || node.cpt.empty()) needs_override.insert(node.name);
    for (const auto& [name, cpt] : spec.cpt_overrides) {
        if (!needs_override.count(name))
            throw std::invalid_argument("unexpected cpt override for node " + name);
        auto it = std::find_if(specs.begin(), specs.end(),
                               [&](const NodeSpec& s) { return s.name == name; });
        it->cpt = cpt;
        needs_override.erase(name);
    }
    if (!needs_override.empty())
        throw std::invalid_argument("missing cpt override for node " +
                                    *needs_override.begin());
    return specs;
}

NodeSpec conjunction_spec(const std::string& name, int first, int last) {
    NodeSpec node;
    node.name = name;
    for (int i = first; i <= last; ++i) node.parents.push_back(r_name(i));
    const std::size_t size = std::size_t{1} << (last - first + 1);
    node.cpt.assign(size, 0.0);
    node.cpt.back() = 1.0;  // true iff every parent is true
    return node;
}

Evidence all_true(const std::vector<std::string>& names) {
    Evidence e;
    for (const std::string& name : names) e.emplace(name, true);
    return e;
}

}  // namespace

std::string r_name(int i) { return "R" + std::to_string(i); }
std::string report_name(int i) { return "REPR" + std::to_string(i); }
std::string shared_report_name(int i, int j) {
    return "REPR" + std::to_string(i) + "_" + std::to_string(j);
}
std::string conjunction_reporter_name(int i) { return "REPC" + std::to_string(i); }

bool is_relaxed(const FigureSpec& spec) {
    if (!spec.extra_edges.empty() || !spec.shared_sources.empty()) return true;
    for (const SourceParams& s : spec.sources) {
        if (s.p == s.q) return true;
        if (s.p != spec.sources[0].p || s.q != spec.sources[0].q) return true;
    }
    return false;
}

std::vector<std::string> report_node_names(const FigureSpec& spec) {
    const int n = spec.base.var_count();
    std::vector<std::string> result;
    std::set<std::string> seen;
    for (std::string& name : report_names_checked(spec, n, n))
        if (seen.insert(name).second) result.push_back(std::move(name));
    return result;
}

BayesNet build_figure_one(const FigureOneSpec& spec) {
    const int n = spec.base.var_count();
    check_sources(spec, n);
    std::vector<NodeSpec> specs = chain_specs(spec.base);
    for (NodeSpec& node : report_specs(spec, n, n)) specs.push_back(std::move(node));
    specs.push_back(conjunction_spec(kConjunctionName, 1, n));
    if (spec.shared_sources.empty()) {
        for (int i = 1; i <= n; ++i) {
            const SourceParams& s = source_for(spec, i);
            specs.push_back(
                NodeSpec{conjunction_reporter_name(i), {kConjunctionName}, {s.q, s.p}});
        }
    }
    BayesNet net(specs);
    validate(net);
    return net;
}

BayesNet build_figure_two(const FigureTwoSpec& spec) {
    const int total = spec.base.var_count();
    if (total < 2)
        throw std::invalid_argument("expansion network needs at least two propositions");
    check_sources(spec, total);
    // shared sources may only pair propositions of the old set
    std::vector<NodeSpec> specs = chain_specs(spec.base);
    for (NodeSpec& node : report_specs(spec, total, total - 1))
        specs.push_back(std::move(node));
    specs.push_back(conjunction_spec(kOldConjunctionName, 1, total - 1));
    specs.push_back(conjunction_spec(kNewConjunctionName, 1, total));
    BayesNet net(specs);
    validate(net);
    return net;
}

FigureOneReadoff figure_one_readoff(const FigureOneSpec& spec) {
    const BayesNet net = build_figure_one(spec);
    const int n = spec.base.var_count();
    FigureOneReadoff r;
    r.relaxed = is_relaxed(spec);
    r.prior = posterior(net, kConjunctionName, {});
    r.posterior = posterior(net, kConjunctionName, all_true(report_node_names(spec)));
    if (spec.shared_sources.empty()) {
        std::vector<std::string> reporters;
        for (int i = 1; i <= n; ++i) reporters.push_back(conjunction_reporter_name(i));
        const double max_post = posterior(net, kConjunctionName, all_true(reporters));
        r.max_posterior = max_post;
        if (max_post > 0.0) r.coherence = r.posterior / max_post;
    }
    return r;
}

FigureTwoReadoff figure_two_readoff(const FigureTwoSpec& spec) {
    const BayesNet net = build_figure_two(spec);
    const int total = spec.base.var_count();
    FigureTwoReadoff r;
    r.relaxed = is_relaxed(spec);
    std::vector<std::string> all_reports = report_node_names(spec);
    std::vector<std::string> old_reports = all_reports;
    old_reports.erase(std::remove(old_reports.begin(), old_reports.end(),
                                  report_name(total)),
                      old_reports.end());
    r.value_old = posterior(net, kOldConjunctionName, all_true(old_reports));
    r.value_new = posterior(net, kNewConjunctionName, all_true(all_reports));
    r.accept = r.value_new >= r.value_old;
    return r;
}

}  // namespace cobex
