// cobex command line: coherence measures, partial coherence orderings,
// belief-expansion decisions and Bayesian-network read-offs over JSON
// documents. Reports are byte-deterministic for identical inputs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cobex/coherence.hpp"
#include "cobex/expansion.hpp"
#include "cobex/figures.hpp"
#include "cobex/json_io.hpp"

namespace {

using namespace cobex;

using Value = std::variant<long long, double, std::vector<double>, std::string, bool>;

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::pair<std::string, Value>> values;
    std::vector<std::string> warnings;

    void add(std::string key, Value value) {
        values.emplace_back(std::move(key), std::move(value));
    }
};

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// probabilities at 6 significant digits in the table format
std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_value(const Value& v) {
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    if (const auto* vec = std::get_if<std::vector<double>>(&v)) {
        std::string out = "(";
        for (std::size_t i = 0; i < vec->size(); ++i) {
            if (i) out += ", ";
            out += format_number((*vec)[i]);
        }
        return out + ")";
    }
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    return std::get<bool>(v) ? "yes" : "no";
}

void print_table(const Report& report) {
    std::size_t width = 7;  // "command"
    for (const auto& [key, value] : report.values) width = std::max(width, key.size());
    const auto line = [&](const std::string& key, const std::string& text) {
        std::printf("%-*s  %s\n", static_cast<int>(width + 1), (key + ":").c_str(),
                    text.c_str());
    };
    line("command", report.command);
    for (const auto& [path, digest] : report.inputs)
        line("input", path + "  fnv1a:" + digest);
    for (const auto& [key, value] : report.values) line(key, format_value(value));
    for (const std::string& w : report.warnings) line("warning", w);
}

void print_json(const Report& report) {
    nlohmann::ordered_json out;
    out["command"] = report.command;
    out["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : report.inputs)
        out["inputs"].push_back({{"path", path}, {"digest", digest}});
    nlohmann::ordered_json values;
    for (const auto& [key, value] : report.values)
        std::visit([&](const auto& v) { values[key] = v; }, value);
    out["values"] = std::move(values);
    out["warnings"] = report.warnings;
    std::printf("%s\n", out.dump(2).c_str());
}

void emit(const Report& report, const std::string& format) {
    if (format == "json")
        print_json(report);
    else
        print_table(report);
}

std::string echo_args(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

nlohmann::json load_input(const std::string& path, Report& report) {
    const std::string bytes = read_file(path);
    report.inputs.emplace_back(path, fnv1a_hex(bytes));
    return parse_document(bytes);
}

constexpr const char* kGridProbeWarning =
    "grid-probe verdict is numerical evidence over a finite grid, not a proof";
constexpr const char* kRelaxedWarning =
    "relaxations active: the closed-form weight-vector route does not apply; "
    "values are network read-offs";

struct CoherenceArgs {
    std::string file;
    double x = 0.0, p = 0.0, q = 0.0;
    bool has_x = false, has_p = false, has_q = false;
    std::string format = "table";
};

struct OrderArgs {
    std::string file_a, file_b;
    int resolution = 999;
    std::string format = "table";
};

struct ExpandArgs {
    std::string file;
    std::string mode;
    double x = 0.0;
    bool has_x = false;
    double threshold = kDefaultBeliefThreshold;
    std::string format = "table";
};

struct BnArgs {
    std::string file;
    std::string evidence_file;
    std::string query;
    std::vector<std::string> dsep_tokens;
    std::string format = "table";
};

void run_coherence(const CoherenceArgs& args, Report& report) {
    if (args.has_x == (args.has_p || args.has_q))
        throw std::invalid_argument("give either --x or both --p and --q");
    if (args.has_p != args.has_q)
        throw std::invalid_argument("--p and --q must be given together");

    const JointDistribution dist =
        any_distribution_from_json(load_input(args.file, report));
    const WeightVector w = weight_vector(dist);

    double x, r;
    if (args.has_x) {
        x = args.x;
        r = 1.0 - x;
    } else {
        const ReliabilityParams params(args.p, args.q);
        x = params.likelihood_ratio();
        r = params.reliability();
    }

    report.add("n", static_cast<long long>(w.set_size()));
    report.add("a", w.coeffs());
    report.add("a0", w.a0());
    report.add("x", x);
    report.add("r", r);
    report.add("posterior", posterior_confidence(w, x));
    report.add("max_posterior", max_coherence_posterior(w.a0(), w.set_size(), x));
    report.add("coherence", coherence_measure(w, x).c);
}

void run_order(const OrderArgs& args, Report& report) {
    const WeightVector first =
        weight_vector(any_distribution_from_json(load_input(args.file_a, report)));
    const WeightVector second =
        weight_vector(any_distribution_from_json(load_input(args.file_b, report)));

    OrderingVerdict verdict;
    if (first.set_size() == 2 && second.set_size() == 2)
        verdict = compare_pair(first, second);
    else if (first.set_size() == 1 && second.set_size() == 1)
        verdict = grid_probe(first, second, args.resolution);
    else
        verdict = compare_general(first, second, args.resolution);

    report.add("n", static_cast<long long>(first.set_size()));
    report.add("a_first", first.coeffs());
    report.add("a_second", second.coeffs());
    report.add("verdict", std::string(to_string(verdict.relation)));
    report.add("criterion", std::string(to_string(verdict.criterion)));
    if (verdict.criterion == Criterion::GridProbe)
        report.warnings.push_back(kGridProbeWarning);
}

void run_expand(const ExpandArgs& args, Report& report) {
    const JointDistribution joint =
        any_distribution_from_json(load_input(args.file, report));
    if (joint.var_count() < 2)
        throw std::invalid_argument("expansion needs a joint over at least two variables");
    const WeightVector w_new = weight_vector(joint);
    const WeightVector w_old = weight_vector(joint.drop_last());

    ExpansionMode mode;
    std::optional<double> x;
    if (args.mode == "fixed") {
        if (!args.has_x) throw std::invalid_argument("--mode fixed requires --x");
        mode = ExpansionMode::FixedX;
        x = args.x;
    } else {
        if (args.has_x) throw std::invalid_argument("--mode averaged takes no --x");
        mode = ExpansionMode::Averaged;
    }
    const ExpansionVerdict verdict = decide_expansion(w_old, w_new, mode, x, args.threshold);

    report.add("n_old", static_cast<long long>(w_old.set_size()));
    report.add("a_old", w_old.coeffs());
    report.add("a_new", w_new.coeffs());
    report.add("mode", args.mode);
    if (verdict.x) report.add("x", *verdict.x);
    report.add("e_old", verdict.value_old);
    report.add("e_new", verdict.value_new);
    report.add("verdict", std::string(verdict.accept ? "accept" : "reject"));
    report.add("belief_threshold", args.threshold);
    report.add("threshold_met", verdict.threshold_met);
}

// "X | Y | Z" with comma-separated node names; Z may be absent or empty
std::array<std::vector<std::string>, 3> parse_dsep(const std::vector<std::string>& tokens) {
    std::string joined;
    for (const std::string& t : tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t;
    }
    std::vector<std::string> parts{""};
    for (char c : joined) {
        if (c == '|')
            parts.emplace_back();
        else
            parts.back() += c;
    }
    if (parts.size() != 2 && parts.size() != 3)
        throw std::invalid_argument("--d-sep wants 'X | Y' or 'X | Y | Z'");
    std::array<std::vector<std::string>, 3> sets;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string name;
        for (char c : parts[i] + ",") {
            if (c == ',') {
                if (!name.empty()) sets[i].push_back(name);
                name.clear();
            } else if (c != ' ' && c != '\t') {
                name += c;
            }
        }
    }
    if (sets[0].empty() || sets[1].empty())
        throw std::invalid_argument("--d-sep needs nodes on both sides");
    return sets;
}

void run_bn(const BnArgs& args, Report& report) {
    const nlohmann::json doc = load_input(args.file, report);

    BayesNet net;
    bool have_figure = false;
    FigureKind kind = FigureKind::Coherence;
    std::optional<FigureSpec> spec;
    if (doc.contains("nodes")) {
        net = network_from_json(doc);
    } else if (doc.contains("figure")) {
        FigureDocument fig = figure_from_json(doc);
        kind = fig.kind;
        have_figure = true;
        net = kind == FigureKind::Coherence ? build_figure_one(fig.spec)
                                            : build_figure_two(fig.spec);
        spec.emplace(std::move(fig.spec));
        if (is_relaxed(*spec)) report.warnings.push_back(kRelaxedWarning);
    } else {
        throw std::invalid_argument(
            "unrecognized network document: expected 'nodes' or 'figure'");
    }

    Evidence evidence;
    if (!args.evidence_file.empty())
        evidence = evidence_from_json(load_input(args.evidence_file, report));

    bool did_something = false;
    if (!args.query.empty()) {
        report.add("query", args.query);
        report.add("posterior", posterior(net, args.query, evidence));
        did_something = true;
    }
    if (!args.dsep_tokens.empty()) {
        const auto sets = parse_dsep(args.dsep_tokens);
        report.add("d_separated", d_separated(net, sets[0], sets[1], sets[2]));
        did_something = true;
    }
    if (!did_something && have_figure) {
        if (!evidence.empty())
            throw std::invalid_argument("--evidence needs --query on figure documents");
        if (kind == FigureKind::Coherence) {
            const FigureOneReadoff r = figure_one_readoff(*spec);
            report.add("prior", r.prior);
            report.add("posterior", r.posterior);
            if (r.max_posterior) report.add("max_posterior", *r.max_posterior);
            if (r.coherence)
                report.add("coherence", *r.coherence);
            else
                report.warnings.push_back(
                    "coherence read-off unavailable: shared sources have no "
                    "per-source reliability");
        } else {
            const FigureTwoReadoff r = figure_two_readoff(*spec);
            report.add("e_old", r.value_old);
            report.add("e_new", r.value_new);
            report.add("verdict", std::string(r.accept ? "accept" : "reject"));
        }
        did_something = true;
    }
    if (!did_something)
        throw std::invalid_argument("nothing to compute: give --query or --d-sep");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence, belief expansion and Bayesian-network analysis"};
    app.require_subcommand(1);

    CoherenceArgs cargs;
    CLI::App* coherence = app.add_subcommand(
        "coherence", "posterior confidence and coherence of an information set");
    coherence->add_option("file", cargs.file, "distribution or grid document")->required();
    auto* copt_x = coherence->add_option("--x", cargs.x, "likelihood ratio q/p in (0, 1]");
    auto* copt_p = coherence->add_option("--p", cargs.p, "P(report | true)");
    auto* copt_q = coherence->add_option("--q", cargs.q, "P(report | false)");
    coherence->add_option("--format", cargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    OrderArgs oargs;
    CLI::App* order = app.add_subcommand(
        "order", "partial coherence ordering between two information sets");
    order->add_option("first", oargs.file_a, "distribution or grid document")->required();
    order->add_option("second", oargs.file_b, "distribution or grid document")->required();
    order->add_option("--probe-resolution", oargs.resolution, "grid probe points")
        ->check(CLI::Range(99, 1000000))
        ->capture_default_str();
    order->add_option("--format", oargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    ExpandArgs eargs;
    CLI::App* expand = app.add_subcommand(
        "expand", "decide belief expansion for the last variable of a joint");
    expand->add_option("file", eargs.file, "joint over the old set plus the new item")
        ->required();
    expand->add_option("--mode", eargs.mode, "fixed or averaged")
        ->required()
        ->check(CLI::IsMember({"fixed", "averaged"}));
    auto* eopt_x = expand->add_option("--x", eargs.x, "likelihood ratio for fixed mode");
    expand->add_option("--threshold", eargs.threshold, "belief threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    expand->add_option("--format", eargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    BnArgs bargs;
    CLI::App* bn = app.add_subcommand(
        "bn", "exact posteriors and d-separation on a network or figure document");
    bn->add_option("file", bargs.file, "network or figure document")->required();
    bn->add_option("--evidence", bargs.evidence_file, "evidence document");
    bn->add_option("--query", bargs.query, "node whose posterior to compute");
    bn->add_option("--d-sep", bargs.dsep_tokens, "'X | Y | Z' node sets")->expected(-1);
    bn->add_option("--format", bargs.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    cargs.has_x = copt_x->count() > 0;
    cargs.has_p = copt_p->count() > 0;
    cargs.has_q = copt_q->count() > 0;
    eargs.has_x = eopt_x->count() > 0;

    Report report;
    report.command = echo_args(argc, argv);
    std::string format = "table";
    try {
        if (coherence->parsed()) {
            format = cargs.format;
            run_coherence(cargs, report);
        } else if (order->parsed()) {
            format = oargs.format;
            run_order(oargs, report);
        } else if (expand->parsed()) {
            format = eargs.format;
            run_expand(eargs, report);
        } else if (bn->parsed()) {
            format = bargs.format;
            run_bn(bargs, report);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    emit(report, format);
    return 0;
}
