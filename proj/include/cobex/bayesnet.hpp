#pragma once

#include <map>
#include <string>
#include <vector>

namespace cobex {

/// Directed network of named binary variables with conditional probability
/// tables. cpt[pmask] is P(node = true | parent assignment), where bit j
/// of pmask set means parents[j] is true. Root nodes hold a single prior
/// entry. Nodes may be declared in any order; construction resolves names
/// and validate() checks the structure.
class BayesNet {
public:
    struct NodeSpec {
        std::string name;
        std::vector<std::string> parents;
        std::vector<double> cpt;
    };

    struct Node {
        std::string name;
        std::vector<int> parents;
        std::vector<double> cpt;
    };

    BayesNet() = default;
    explicit BayesNet(const std::vector<NodeSpec>& specs);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    bool has_node(const std::string& name) const { return ids_.count(name) != 0; }
    int node_id(const std::string& name) const;  // throws on unknown name

private:
    std::vector<Node> nodes_;
    std::map<std::string, int> ids_;
};

/// Observed values, keyed by node name.
using Evidence = std::map<std::string, bool>;

/// Checks acyclicity, CPT arity (2^|parents| entries) and probability
/// ranges. Throws std::invalid_argument describing the first violation.
void validate(const BayesNet& net);

/// Exact P(query = true | evidence) by variable elimination with a
/// min-degree ordering. Throws on unknown names, a query that is itself
/// observed, or evidence of probability zero.
double posterior(const BayesNet& net, const std::string& query, const Evidence& evidence);

/// True iff every undirected path between x and y is blocked by z under
/// the usual collider / non-collider rules. The three sets must be
/// disjoint.
bool d_separated(const BayesNet& net, const std::vector<std::string>& x,
                 const std::vector<std::string>& y, const std::vector<std::string>& z);

}  // namespace cobex
