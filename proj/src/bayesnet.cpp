#include "cobex/bayesnet.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>

namespace cobex {
namespace {

constexpr int kMaxParents = 25;

// Dense table over a sorted set of variables; bit k of an index is the
// value of vars[k].
struct Factor {
    std::vector<int> vars;
    std::vector<double> vals;
};

int var_position(const Factor& f, int var) {
    const auto it = std::lower_bound(f.vars.begin(), f.vars.end(), var);
    return it != f.vars.end() && *it == var ? static_cast<int>(it - f.vars.begin()) : -1;
}

Factor product(const Factor& a, const Factor& b) {
    Factor r;
    r.vars.resize(a.vars.size() + b.vars.size());
    r.vars.resize(static_cast<std::size_t>(
        std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                       r.vars.begin()) -
        r.vars.begin()));
    const std::size_t bits = r.vars.size();
    if (bits > 30) throw std::runtime_error("elimination factor exceeds 2^30 entries");
    // per result bit: the index stride it contributes in each operand
    std::vector<std::uint32_t> stride_a(bits, 0), stride_b(bits, 0);
    for (std::size_t k = 0; k < bits; ++k) {
        if (int p = var_position(a, r.vars[k]); p >= 0) stride_a[k] = 1u << p;
        if (int p = var_position(b, r.vars[k]); p >= 0) stride_b[k] = 1u << p;
    }
    r.vals.resize(std::size_t{1} << bits);
    for (std::size_t idx = 0; idx < r.vals.size(); ++idx) {
        std::uint32_t ia = 0, ib = 0;
        for (std::size_t k = 0; k < bits; ++k) {
            if (idx >> k & 1) {
                ia |= stride_a[k];
                ib |= stride_b[k];
            }
        }
        r.vals[idx] = a.vals[ia] * b.vals[ib];
    }
    return r;
}

Factor sum_out(const Factor& f, int var) {
    const int p = var_position(f, var);
    Factor r;
    r.vars = f.vars;
    r.vars.erase(r.vars.begin() + p);
    r.vals.resize(f.vals.size() / 2);
    const std::size_t low_mask = (std::size_t{1} << p) - 1;
    for (std::size_t j = 0; j < r.vals.size(); ++j) {
        const std::size_t base = (j & low_mask) | ((j & ~low_mask) << 1);
        r.vals[j] = f.vals[base] + f.vals[base | std::size_t{1} << p];
    }
    return r;
}

Factor reduce(const Factor& f, int var, bool value) {
    const int p = var_position(f, var);
    Factor r;
    r.vars = f.vars;
    r.vars.erase(r.vars.begin() + p);
    r.vals.resize(f.vals.size() / 2);
    const std::size_t low_mask = (std::size_t{1} << p) - 1;
    const std::size_t bit = value ? std::size_t{1} << p : 0;
    for (std::size_t j = 0; j < r.vals.size(); ++j)
        r.vals[j] = f.vals[(j & low_mask) | ((j & ~low_mask) << 1) | bit];
    return r;
}

Factor node_factor(const BayesNet::Node& node, int id) {
    // scope = sorted(parents + node); remap CPT indices accordingly
    Factor f;
    f.vars = node.parents;
    f.vars.push_back(id);
    std::sort(f.vars.begin(), f.vars.end());
    f.vals.resize(std::size_t{1} << f.vars.size());
    const std::size_t pcount = node.parents.size();
    const std::size_t self_bit = std::size_t{1}
                                 << static_cast<std::size_t>(var_position(f, id));
    for (std::size_t pmask = 0; pmask < node.cpt.size(); ++pmask) {
        std::size_t base = 0;
        for (std::size_t j = 0; j < pcount; ++j)
            if (pmask >> j & 1)
                base |= std::size_t{1}
                        << static_cast<std::size_t>(var_position(f, node.parents[j]));
        f.vals[base | self_bit] = node.cpt[pmask];
        f.vals[base] = 1.0 - node.cpt[pmask];
    }
    return f;
}

}  // namespace

BayesNet::BayesNet(const std::vector<NodeSpec>& specs) {
    nodes_.reserve(specs.size());
    for (const NodeSpec& s : specs) {
        if (!ids_.emplace(s.name, static_cast<int>(nodes_.size())).second)
            throw std::invalid_argument("duplicate node name: " + s.name);
        nodes_.push_back(Node{s.name, {}, s.cpt});
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        std::set<std::string> seen;
        for (const std::string& pname : specs[i].parents) {
            if (!seen.insert(pname).second)
                throw std::invalid_argument("duplicate parent '" + pname + "' of node " +
                                            specs[i].name);
            nodes_[i].parents.push_back(node_id(pname));
        }
    }
}

int BayesNet::node_id(const std::string& name) const {
    const auto it = ids_.find(name);
    if (it == ids_.end()) throw std::invalid_argument("unknown node: " + name);
    return it->second;
}

void validate(const BayesNet& net) {
    std::vector<int> out_degree(static_cast<std::size_t>(net.node_count()), 0);
    for (const BayesNet::Node& node : net.nodes()) {
        if (node.parents.size() > static_cast<std::size_t>(kMaxParents))
            throw std::invalid_argument("node " + node.name + " has too many parents");
        const std::size_t expected = std::size_t{1} << node.parents.size();
        if (node.cpt.size() != expected)
            throw std::invalid_argument("cpt arity mismatch for node " + node.name +
                                        ": expected " + std::to_string(expected) +
                                        " entries, got " + std::to_string(node.cpt.size()));
        for (double p : node.cpt)
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("probability out of range in cpt of node " +
                                            node.name);
        for (int p : node.parents) out_degree[static_cast<std::size_t>(p)]++;
    }
    // Kahn over the reversed edges: repeatedly retire childless nodes.
    std::vector<std::vector<int>> parents_of(static_cast<std::size_t>(net.node_count()));
    for (int id = 0; id < net.node_count(); ++id)
        parents_of[static_cast<std::size_t>(id)] = net.node(id).parents;
    std::deque<int> ready;
    for (int id = 0; id < net.node_count(); ++id)
        if (out_degree[static_cast<std::size_t>(id)] == 0) ready.push_back(id);
    int retired = 0;
    while (!ready.empty()) {
        const int id = ready.front();
        ready.pop_front();
        ++retired;
        for (int p : parents_of[static_cast<std::size_t>(id)])
            if (--out_degree[static_cast<std::size_t>(p)] == 0) ready.push_back(p);
    }
    if (retired != net.node_count()) throw std::invalid_argument("cycle detected");
}

double posterior(const BayesNet& net, const std::string& query, const Evidence& evidence) {
    validate(net);
    const int qid = net.node_id(query);
    std::map<int, bool> observed;
    for (const auto& [name, value] : evidence) observed.emplace(net.node_id(name), value);
    if (observed.count(qid))
        throw std::invalid_argument("query node " + query + " is observed");

    std::vector<Factor> factors;
    factors.reserve(net.nodes().size());
    for (int id = 0; id < net.node_count(); ++id) {
        Factor f = node_factor(net.node(id), id);
        for (const auto& [var, value] : observed)
            if (var_position(f, var) >= 0) f = reduce(f, var, value);
        factors.push_back(std::move(f));
    }

    std::set<int> to_eliminate;
    for (int id = 0; id < net.node_count(); ++id)
        if (id != qid && !observed.count(id)) to_eliminate.insert(id);

    while (!to_eliminate.empty()) {
        // min-degree: fewest distinct co-occurring variables; ties by id
        int best = -1;
        std::size_t best_degree = 0;
        for (int v : to_eliminate) {
            std::set<int> neighbors;
            for (const Factor& f : factors)
                if (var_position(f, v) >= 0)
                    neighbors.insert(f.vars.begin(), f.vars.end());
            neighbors.erase(v);
            if (best < 0 || neighbors.size() < best_degree) {
                best = v;
                best_degree = neighbors.size();
            }
        }
        Factor combined{{}, {1.0}};
        std::vector<Factor> rest;
        rest.reserve(factors.size());
        for (Factor& f : factors) {
            if (var_position(f, best) >= 0)
                combined = product(combined, f);
            else
                rest.push_back(std::move(f));
        }
        rest.push_back(sum_out(combined, best));
        factors = std::move(rest);
        to_eliminate.erase(best);
    }

    Factor result{{}, {1.0}};
    for (const Factor& f : factors) result = product(result, f);
    if (result.vars.size() != 1) throw std::logic_error("query variable was eliminated");
    const double z = result.vals[0] + result.vals[1];
    if (z <= 0.0) throw std::runtime_error("impossible evidence");
    return result.vals[1] / z;
}

bool d_separated(const BayesNet& net, const std::vector<std::string>& x,
                 const std::vector<std::string>& y, const std::vector<std::string>& z) {
    const auto to_ids = [&](const std::vector<std::string>& names) {
        std::set<int> ids;
        for (const std::string& name : names) ids.insert(net.node_id(name));
        return ids;
    };
    const std::set<int> xs = to_ids(x), ys = to_ids(y), zs = to_ids(z);
    for (int v : xs)
        if (ys.count(v) || zs.count(v))
            throw std::invalid_argument("d-separation sets must be disjoint");
    for (int v : ys)
        if (zs.count(v)) throw std::invalid_argument("d-separation sets must be disjoint");

    std::vector<std::vector<int>> children(static_cast<std::size_t>(net.node_count()));
    for (int id = 0; id < net.node_count(); ++id)
        for (int p : net.node(id).parents) children[static_cast<std::size_t>(p)].push_back(id);

    // ancestors of z, z included: colliders open only below these
    std::vector<bool> anc(static_cast<std::size_t>(net.node_count()), false);
    std::deque<int> queue(zs.begin(), zs.end());
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (anc[static_cast<std::size_t>(v)]) continue;
        anc[static_cast<std::size_t>(v)] = true;
        for (int p : net.node(v).parents) queue.push_back(p);
    }

    // reachability over (node, arrival direction) states
    enum : int { FromChild = 0, FromParent = 1 };
    std::vector<std::array<bool, 2>> visited(static_cast<std::size_t>(net.node_count()),
                                             {false, false});
    std::deque<std::pair<int, int>> active;
    for (int v : xs) active.emplace_back(v, FromChild);
    while (!active.empty()) {
        const auto [v, dir] = active.front();
        active.pop_front();
        if (visited[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)]) continue;
        visited[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)] = true;
        const bool blocked = zs.count(v) != 0;
        if (!blocked && ys.count(v)) return false;
        if (dir == FromChild) {
            if (!blocked) {
                for (int p : net.node(v).parents) active.emplace_back(p, FromChild);
                for (int c : children[static_cast<std::size_t>(v)])
                    active.emplace_back(c, FromParent);
            }
        } else {
            if (!blocked)
                for (int c : children[static_cast<std::size_t>(v)])
                    active.emplace_back(c, FromParent);
            if (anc[static_cast<std::size_t>(v)])
                for (int p : net.node(v).parents) active.emplace_back(p, FromChild);
        }
    }
    return true;
}

}  // namespace cobex
