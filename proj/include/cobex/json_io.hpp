#pragma once

#include <string>

#include "json.hpp"

#include "cobex/bayesnet.hpp"
#include "cobex/distribution.hpp"
#include "cobex/figures.hpp"

namespace cobex {

/// Parses JSON text, rejecting duplicate object keys anywhere in the
/// document (a silent last-wins merge would hide input mistakes).
nlohmann::json parse_document(const std::string& text);

/// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

/// {"n": int, "table": {bitstring: prob, ...}} with n-character keys,
/// leftmost character = R_1. Omitted assignments are zero.
JointDistribution distribution_from_json(const nlohmann::json& doc);

/// {"cells": int, "intervals": [[lo, hi], ...]} with 1-based inclusive
/// bounds.
JointDistribution grid_from_json(const nlohmann::json& doc);

/// Accepts either of the two distribution document forms.
JointDistribution any_distribution_from_json(const nlohmann::json& doc);

/// {"nodes": [{"name": str, "parents": [str], "cpt": {bitstring: prob}}]}
/// with one cpt row per parent assignment; key character j belongs to
/// parents[j]. Root nodes use the single key "".
BayesNet network_from_json(const nlohmann::json& doc);

/// {"NODE": bool, ...}
Evidence evidence_from_json(const nlohmann::json& doc);

enum class FigureKind { Coherence, Expansion };

struct FigureDocument {
    FigureKind kind = FigureKind::Coherence;
    FigureSpec spec;
};

/// {"figure": "coherence"|"expansion", "distribution": <distribution or
///  grid doc>, "sources": [{"p": .., "q": ..}, ...],
///  "extra_edges": [{"from": .., "to": ..}, ...],
///  "shared_sources": [[i, j], ...],
///  "cpt_overrides": {node: {bitstring: prob, ...}, ...}}
FigureDocument figure_from_json(const nlohmann::json& doc);

}  // namespace cobex
