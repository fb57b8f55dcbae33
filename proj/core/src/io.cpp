#include "lincyc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lincyc {

namespace {

using json = nlohmann::ordered_json;

class Tokens {
 public:
  explicit Tokens(std::string_view text) : text_(text) {}

  bool next(std::uint64_t& out) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), out);
    if (ec != std::errc()) throw Error(ErrorKind::Parse, "bad integer on line " + std::to_string(line_));
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return true;
  }

  std::uint64_t need(const char* what) {
    std::uint64_t v = 0;
    if (!next(v)) throw Error(ErrorKind::Parse, std::string("unexpected end of input reading ") + what);
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::vector<std::vector<Vertex>> canonical_edges(const LinearHypergraph& g) {
  auto edges = g.edge_list();
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::string to_text(const LinearHypergraph& g) {
  std::string out;
  out += std::to_string(g.uniformity()) + ' ' + std::to_string(g.universe()) + ' ' +
         std::to_string(g.edge_count()) + '\n';
  for (const auto& e : canonical_edges(g)) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

LinearHypergraph parse_text(std::string_view text) {
  Tokens tok(text);
  const auto r = tok.need("r");
  const auto n = tok.need("n");
  const auto m = tok.need("m");
  if (r < 2) throw Error(ErrorKind::Parse, "uniformity must be at least 2");
  if (n > std::numeric_limits<Vertex>::max()) throw Error(ErrorKind::Parse, "vertex count too large");
  std::vector<std::vector<Vertex>> edges(m, std::vector<Vertex>(r));
  for (auto& e : edges)
    for (auto& v : e) {
      auto x = tok.need("edge vertex");
      if (x >= n) throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(x) + " out of range");
      v = static_cast<Vertex>(x);
    }
  std::uint64_t extra = 0;
  if (tok.next(extra)) throw Error(ErrorKind::Parse, "trailing data after the declared edges");
  return LinearHypergraph::build(n, r, edges);
}

std::string to_json(const LinearHypergraph& g) {
  json j;
  j["r"] = g.uniformity();
  j["n"] = g.universe();
  j["edges"] = canonical_edges(g);
  return j.dump();
}

LinearHypergraph parse_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
    return LinearHypergraph::build(j.at("n").get<std::size_t>(), j.at("r").get<std::size_t>(),
                                   j.at("edges").get<std::vector<std::vector<Vertex>>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

LinearHypergraph parse_any(std::string_view text) {
  auto it = std::find_if(text.begin(), text.end(),
                         [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (it != text.end() && *it == '{') return parse_json(text);
  return parse_text(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << contents;
}

LinearHypergraph read_hypergraph(const std::string& path) { return parse_any(read_file(path)); }

void write_hypergraph(const std::string& path, const LinearHypergraph& g, bool json_format) {
  write_file(path, json_format ? to_json(g) + "\n" : to_text(g));
}

std::string cycles_to_json(const std::vector<std::vector<VertexSet>>& cycles) {
  json j;
  j["cycles"] = cycles;
  return j.dump();
}

std::vector<std::vector<VertexSet>> parse_cycles_json(std::string_view text) {
  try {
    json j = json::parse(text.begin(), text.end());
    if (j.is_array()) return j.get<std::vector<std::vector<VertexSet>>>();
    if (j.contains("cycles")) return j.at("cycles").get<std::vector<std::vector<VertexSet>>>();
    if (j.contains("cycle")) return {j.at("cycle").get<std::vector<VertexSet>>()};
    if (j.contains("witnesses")) return j.at("witnesses").get<std::vector<std::vector<VertexSet>>>();
    throw Error(ErrorKind::Parse, "no cycles found in JSON input");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace lincyc
