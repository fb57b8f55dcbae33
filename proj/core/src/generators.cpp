#include "lincyc/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lincyc/oracle.hpp"

namespace lincyc {

GenMode parse_gen_mode(const std::string& s) {
  if (s == "steiner") return GenMode::Steiner;
  if (s == "sparsified") return GenMode::Sparsified;
  if (s == "planted") return GenMode::Planted;
  if (s == "random") return GenMode::Random;
  throw Error(ErrorKind::Parse, "unknown generator mode '" + s + "'");
}

const char* to_string(GenMode m) noexcept {
  switch (m) {
    case GenMode::Steiner: return "steiner";
    case GenMode::Sparsified: return "sparsified";
    case GenMode::Planted: return "planted";
    case GenMode::Random: return "random";
  }
  return "?";
}

namespace {

class PairBits {
 public:
  explicit PairBits(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  bool used(Vertex u, Vertex v) const { return (row(u)[v >> 6] >> (v & 63)) & 1U; }
  void mark(Vertex u, Vertex v) {
    bits_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  }
  const std::uint64_t* row(Vertex u) const { return bits_.data() + u * words_; }
  std::size_t words() const { return words_; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

bool fits(const PairBits& pairs, const std::vector<Vertex>& e) {
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b)
      if (e[a] == e[b] || pairs.used(e[a], e[b])) return false;
  return true;
}

void add(PairBits& pairs, std::vector<std::vector<Vertex>>& edges, std::vector<Vertex> e) {
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) pairs.mark(e[a], e[b]);
  std::sort(e.begin(), e.end());
  edges.push_back(std::move(e));
}

// Candidate vertices above `from` whose pairs with every chosen vertex are free.
class Sweep {
 public:
  Sweep(PairBits& pairs, std::vector<std::vector<Vertex>>& edges, std::size_t r)
      : pairs_(pairs), edges_(edges), r_(r), cand_(r, std::vector<std::uint64_t>(pairs.words())) {}

  void run() {
    const std::size_t n = pairs_.size();
    for (Vertex u = 0; u < n; ++u) {
      chosen_.assign(1, u);
      restrict(0, u);
      complete(1);
    }
  }

 private:
  void restrict(std::size_t depth, Vertex v) {
    auto& out = cand_[depth];
    const std::uint64_t* row = pairs_.row(v);
    const std::size_t w = pairs_.words();
    for (std::size_t i = 0; i < w; ++i) {
      std::uint64_t free = ~row[i];
      if (depth > 0) free &= cand_[depth - 1][i];
      out[i] = free;
    }
    const std::size_t n = pairs_.size();
    for (std::size_t i = 0; i < (v >> 6); ++i) out[i] = 0;
    out[v >> 6] &= ~((std::uint64_t{2} << (v & 63)) - 1);
    if (n % 64) out[w - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
  }

  // Returns true when an edge was added through the current prefix.
  bool complete(std::size_t depth) {
    const std::size_t w = pairs_.words();
    for (std::size_t i = 0; i < w; ++i) {
      while (cand_[depth - 1][i]) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(cand_[depth - 1][i]));
        cand_[depth - 1][i] &= cand_[depth - 1][i] - 1;
        const auto v = static_cast<Vertex>(i * 64 + bit);
        if (pairs_.used(chosen_.back(), v)) continue;
        bool ok = true;
        for (Vertex c : chosen_)
          if (pairs_.used(c, v)) ok = false;
        if (!ok) continue;
        chosen_.push_back(v);
        if (chosen_.size() == r_) {
          add(pairs_, edges_, chosen_);
          chosen_.pop_back();
          if (depth > 1) return true;
          continue;
        }
        restrict(depth, v);
        const bool added = complete(depth + 1);
        chosen_.pop_back();
        if (added && depth > 1) return true;
      }
    }
    return false;
  }

  PairBits& pairs_;
  std::vector<std::vector<Vertex>>& edges_;
  std::size_t r_;
  std::vector<std::vector<std::uint64_t>> cand_;
  std::vector<Vertex> chosen_;
};

std::vector<Vertex> random_set(std::mt19937_64& rng, std::size_t n, std::size_t r) {
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> e;
  while (e.size() < r) {
    Vertex v = pick(rng);
    if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
  }
  return e;
}

}  // namespace

LinearHypergraph greedy_partial_steiner(std::size_t n, std::size_t r, std::uint64_t seed) {
  if (r < 2 || n < r) throw Error(ErrorKind::PreconditionFailed, "need n >= r >= 2");
  std::mt19937_64 rng(seed);
  PairBits pairs(n);
  std::vector<std::vector<Vertex>> edges;
  const std::size_t samples = n * n;
  for (std::size_t s = 0; s < samples; ++s) {
    auto e = random_set(rng, n, r);
    if (fits(pairs, e)) add(pairs, edges, std::move(e));
  }
  Sweep(pairs, edges, r).run();
  return LinearHypergraph::build(n, r, edges);
}

std::size_t girth_target(std::size_t n, double d, double epsilon) {
  if (d <= 1 || n < 2) return 3;
  const double m = std::floor((1 - epsilon) * std::log(static_cast<double>(n)) / std::log(d));
  return std::max<std::size_t>(3, static_cast<std::size_t>(std::max(0.0, m)));
}

SparsifyReport high_girth_sparsify(const LinearHypergraph& base, double d, std::size_t m, std::uint64_t seed,
                                   std::size_t max_attempts, double epsilon) {
  const std::size_t n = base.universe();
  const std::size_t r = base.uniformity();
  const double p = 2.0 * static_cast<double>(r) * d / static_cast<double>(n);
  if (p > 1) throw Error(ErrorKind::PreconditionFailed, "sampling probability 2rd/n exceeds 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  SparsifyReport best;
  best.average_degree = -1;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<std::vector<Vertex>> sampled;
    for (EdgeId e = 0; e < base.edge_count(); ++e)
      if (keep(rng)) sampled.push_back(base.edge_set(e));
    auto g = LinearHypergraph::build(n, r, sampled);
    std::vector<bool> alive(g.edge_count(), true);
    std::size_t deleted = 0;
    if (m >= 3) {
      EdgeId from = 0;
      while (auto found = first_short_cycle(g, m, alive, from)) {
        EdgeId victim = found->edges.front();
        for (EdgeId e : found->edges)
          if (g.edge_set(e) < g.edge_set(victim)) victim = e;
        alive[victim] = false;
        ++deleted;
        from = *std::min_element(found->edges.begin(), found->edges.end());
      }
    }
    std::vector<std::vector<Vertex>> kept;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (alive[e]) kept.push_back(g.edge_set(e));
    SparsifyReport rep;
    rep.graph = LinearHypergraph::build(n, r, kept);
    rep.p = p;
    rep.max_len = m;
    rep.sampled_edges = sampled.size();
    rep.deleted_edges = deleted;
    rep.attempts = attempt;
    rep.average_degree = rep.graph.average_degree();
    rep.expected_short_cycles_bound = 2 * std::pow(2.0 * static_cast<double>(r) * d, static_cast<double>(m));
    rep.density_condition = 0.8 * d * std::pow(static_cast<double>(n), epsilon * epsilon) >
                            std::ldexp(1.0, static_cast<int>(m) + 1) * static_cast<double>(r);
    rep.oracle_confirmed = m < 3 || !girth(rep.graph, m).has_value();
    if (rep.average_degree >= d) return rep;
    if (rep.average_degree > best.average_degree) best = std::move(rep);
  }
  throw Error(ErrorKind::RetriesExhausted,
              "best average degree " + std::to_string(best.average_degree) + " after " +
                  std::to_string(max_attempts) + " attempts");
}

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

struct PairSet {
  std::unordered_set<std::uint64_t> used;

  bool fits(const std::vector<Vertex>& e) const {
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b)
        if (used.count(pair_key(e[a], e[b]))) return false;
    return true;
  }
  void add(const std::vector<Vertex>& e) {
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b) used.insert(pair_key(e[a], e[b]));
  }
};

void add_random_edges(std::mt19937_64& rng, std::size_t n, std::size_t r, std::size_t target, PairSet& pairs,
                      std::vector<std::vector<Vertex>>& edges) {
  std::size_t added = 0;
  const std::size_t cap = 200 * target + 1000;
  for (std::size_t s = 0; s < cap && added < target; ++s) {
    auto e = random_set(rng, n, r);
    if (!pairs.fits(e)) continue;
    pairs.add(e);
    std::sort(e.begin(), e.end());
    edges.push_back(std::move(e));
    ++added;
  }
}

}  // namespace

PlantedInstance plant_cycles(std::size_t n, std::size_t r, const std::vector<std::size_t>& lengths,
                             double background, std::uint64_t seed) {
  if (r < 3) throw Error(ErrorKind::PreconditionFailed, "planted cycles need r >= 3");
  std::size_t need = 0;
  for (std::size_t len : lengths) {
    if (len < 3) throw Error(ErrorKind::Infeasible, "cycle length must be at least 3");
    need += (r - 1) * len;
  }
  if (need > n)
    throw Error(ErrorKind::Infeasible, "cycles need " + std::to_string(need) + " vertices but n = " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  PlantedInstance out;
  PairSet pairs;
  std::vector<std::vector<Vertex>> edges;
  std::size_t next = 0;
  for (std::size_t len : lengths) {
    const std::size_t base = next;
    next += (r - 1) * len;
    LinearCycle c;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Vertex> e{perm[base + i], perm[base + (i + 1) % len]};
      for (std::size_t j = 0; j < r - 2; ++j) e.push_back(perm[base + len + i * (r - 2) + j]);
      pairs.add(e);
      std::sort(e.begin(), e.end());
      c.edges.push_back(e);
      edges.push_back(std::move(e));
    }
    out.witnesses.push_back(std::move(c));
  }
  const auto target = static_cast<std::size_t>(std::llround(background * static_cast<double>(n) / static_cast<double>(r)));
  add_random_edges(rng, n, r, target, pairs, edges);
  out.graph = LinearHypergraph::build(n, r, edges);
  return out;
}

LinearHypergraph random_linear(std::size_t n, std::size_t r, double d, std::uint64_t seed) {
  if (r < 2 || n < r) throw Error(ErrorKind::PreconditionFailed, "need n >= r >= 2");
  std::mt19937_64 rng(seed);
  PairSet pairs;
  std::vector<std::vector<Vertex>> edges;
  const auto target = static_cast<std::size_t>(std::llround(d * static_cast<double>(n) / static_cast<double>(r)));
  add_random_edges(rng, n, r, target, pairs, edges);
  return LinearHypergraph::build(n, r, edges);
}

void validate(const GenSpec& spec) {
  if (spec.r < 3) throw Error(ErrorKind::PreconditionFailed, "r must be at least 3");
  if (spec.n < spec.r) throw Error(ErrorKind::PreconditionFailed, "n must be at least r");
  if (spec.d < 0) throw Error(ErrorKind::PreconditionFailed, "d must be nonnegative");
  if (spec.mode == GenMode::Sparsified) {
    if (2.0 * static_cast<double>(spec.r) * spec.d > static_cast<double>(spec.n))
      throw Error(ErrorKind::PreconditionFailed, "sparsified mode needs 2rd <= n");
    if (spec.girth_floor == 1) throw Error(ErrorKind::PreconditionFailed, "girth floor must be 0 or at least 2");
    if (spec.epsilon <= 0 || spec.epsilon >= 1) throw Error(ErrorKind::PreconditionFailed, "epsilon must lie in (0,1)");
  }
  if (spec.mode == GenMode::Planted && spec.lengths.empty())
    throw Error(ErrorKind::PreconditionFailed, "planted mode needs at least one length");
}

Generated generate(const GenSpec& spec) {
  validate(spec);
  Generated out;
  std::ostringstream s;
  switch (spec.mode) {
    case GenMode::Steiner:
      out.graph = greedy_partial_steiner(spec.n, spec.r, spec.seed);
      break;
    case GenMode::Sparsified: {
      const std::size_t m = spec.girth_floor ? spec.girth_floor : girth_target(spec.n, spec.d, spec.epsilon);
      auto base = greedy_partial_steiner(spec.n, spec.r, spec.seed);
      auto rep = high_girth_sparsify(base, spec.d, m, spec.seed ^ 0x9e3779b97f4a7c15ULL, spec.max_attempts,
                                     spec.epsilon);
      s << "p=" << rep.p << " m=" << m << " sampled=" << rep.sampled_edges << " deleted=" << rep.deleted_edges
        << " attempts=" << rep.attempts << " expected_short_cycles<" << rep.expected_short_cycles_bound
        << " density_condition=" << (rep.density_condition ? "true" : "false") << ' ';
      out.graph = std::move(rep.graph);
      break;
    }
    case GenMode::Planted: {
      auto inst = plant_cycles(spec.n, spec.r, spec.lengths, spec.d, spec.seed);
      out.graph = std::move(inst.graph);
      out.witnesses = std::move(inst.witnesses);
      break;
    }
    case GenMode::Random:
      out.graph = random_linear(spec.n, spec.r, spec.d, spec.seed);
      break;
  }
  s << "mode=" << to_string(spec.mode) << " n=" << spec.n << " r=" << spec.r << " edges=" << out.graph.edge_count()
    << " average_degree=" << out.graph.average_degree() << " seed=" << spec.seed;
  out.summary = s.str();
  return out;
}

}  // namespace lincyc
