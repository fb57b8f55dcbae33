#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lincyc/hypergraph.hpp"

namespace lincyc {

/// Text format: a header line `r n m`, then one edge per line with vertices
/// ascending, lines in lexicographic (numeric) order.
std::string to_text(const LinearHypergraph& g);
LinearHypergraph parse_text(std::string_view text);

/// JSON mirror `{"r":..,"n":..,"edges":[[..],..]}` with the same edge order.
std::string to_json(const LinearHypergraph& g);
LinearHypergraph parse_json(std::string_view text);

/// Picks JSON when the first non-blank character is `{`, text otherwise.
LinearHypergraph parse_any(std::string_view text);

LinearHypergraph read_hypergraph(const std::string& path);
void write_hypergraph(const std::string& path, const LinearHypergraph& g, bool json = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Edge lists in canonical sorted order, as written by to_text.
std::vector<std::vector<Vertex>> canonical_edges(const LinearHypergraph& g);

/// `{"cycles":[[[..],..],..]}`
std::string cycles_to_json(const std::vector<std::vector<VertexSet>>& cycles);
/// Accepts `{"cycles":..}`, an engine report (`{"cycles":..}` nested the same
/// way), `{"cycle":[..]}`, or a bare array of cycles.
std::vector<std::vector<VertexSet>> parse_cycles_json(std::string_view text);

}  // namespace lincyc
