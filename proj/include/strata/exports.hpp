#pragma once

#include <string>

#include "strata/model.hpp"

namespace strata {

/// Renders the model as logic facts, one per line, deterministic order:
/// vertices top layer first, then edges, maps, and requirements.
///   vertex(N, 'id').
///   edge(N, 'a', 'b').            endpoints sorted, a < b
///   map(N, 'upper', 'lower').     N is the upper layer
///   requirement('rid', N, 'src', 'dst').
/// Throws IdNotQuotable when an id contains an apostrophe.
std::string export_logic_facts(const LayeredModel& model);

/// Renders the model as a graph-description text: one cluster per layer, top
/// layer first, solid undirected edges for links, dashed directed edges for
/// projections. Byte-deterministic for a given model.
std::string export_drawing(const LayeredModel& model);

}  // namespace strata
