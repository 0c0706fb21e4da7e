#include "recsys/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/prng.hpp"

namespace recsys {

std::span<const std::pair<std::uint32_t, double>> SimilarityGraph::neighbors(
    std::uint32_t v) const {
  return {adjacency.data() + row_offset[v], row_offset[v + 1] - row_offset[v]};
}

double SimilarityGraph::weighted_degree(std::uint32_t v) const {
  double sum = 0.0;
  for (const auto& [u, w] : neighbors(v)) {
    (void)u;
    sum += w;
  }
  return sum;
}

double SimilarityGraph::total_weight() const {
  double sum = 0.0;
  for (const Edge& e : edges) sum += e.w;
  return sum;
}

namespace {

void build_adjacency(SimilarityGraph& g) {
  std::vector<std::size_t> degree(g.node_count + 1, 0);
  for (const auto& e : g.edges) {
    ++degree[e.a + 1];
    ++degree[e.b + 1];
  }
  g.row_offset.assign(g.node_count + 1, 0);
  for (std::size_t i = 0; i < g.node_count; ++i)
    g.row_offset[i + 1] = g.row_offset[i] + degree[i + 1];
  g.adjacency.resize(g.row_offset[g.node_count]);
  std::vector<std::size_t> cursor(g.row_offset.begin(), g.row_offset.end() - 1);
  for (const auto& e : g.edges) {
    g.adjacency[cursor[e.a]++] = {e.b, e.w};
    g.adjacency[cursor[e.b]++] = {e.a, e.w};
  }
  for (std::size_t i = 0; i < g.node_count; ++i)
    std::sort(g.adjacency.begin() + g.row_offset[i],
              g.adjacency.begin() + g.row_offset[i + 1]);
}

}  // namespace

SimilarityGraph build_graph(const SimilarityMatrix& sim, double threshold,
                            const RadiusVector& radii,
                            const std::vector<std::uint32_t>* popularity_order) {
  if (threshold < 0.0) throw ValidateError("build_graph: threshold must be >= 0");
  if (radii.kind != sim.kind() || radii.radii.size() != sim.size())
    throw ValidateError("build_graph: radius vector does not match the matrix");

  SimilarityGraph g;
  g.node_count = sim.size();
  g.kind = sim.kind();
  g.radius = radii.radii;
  for (const auto& e : sim.entries())
    if (e.sim > threshold) g.edges.push_back({e.a, e.b, e.sim});

  g.popularity_rank.assign(g.node_count, 0);
  if (popularity_order != nullptr) {
    if (popularity_order->size() != g.node_count)
      throw ValidateError("build_graph: popularity order does not match the matrix");
    for (std::size_t r = 0; r < popularity_order->size(); ++r)
      g.popularity_rank[(*popularity_order)[r]] = r + 1;
  } else {
    for (std::size_t v = 0; v < g.node_count; ++v) g.popularity_rank[v] = v + 1;
  }

  build_adjacency(g);
  return g;
}

namespace {

// Working graph for one aggregation level. Self-loops use the doubled
// convention (an intra-community bundle of weight w contributes 2w), so the
// total 2m is invariant across levels.
struct LevelGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
  std::vector<double> self_loop;
  std::vector<double> degree;  // self_loop + sum of incident weights
  double total = 0.0;          // 2m

  void compute_degrees() {
    degree.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      double sum = self_loop[v];
      for (const auto& [u, w] : adj[v]) {
        (void)u;
        sum += w;
      }
      degree[v] = sum;
    }
    total = 0.0;
    for (double d : degree) total += d;
  }
};

LevelGraph level_from(const SimilarityGraph& g) {
  LevelGraph lg;
  lg.n = g.node_count;
  lg.adj.resize(lg.n);
  lg.self_loop.assign(lg.n, 0.0);
  for (std::size_t v = 0; v < lg.n; ++v) {
    auto row = g.neighbors(static_cast<std::uint32_t>(v));
    lg.adj[v].assign(row.begin(), row.end());
  }
  lg.compute_degrees();
  return lg;
}

// One local-move sweep until stable. Visit order is one seeded permutation,
// reused across passes; insertion gains are compared in the scaled form
// k_in(c) - tot(c)*k_i/2m, which orders exactly like the modularity delta.
bool local_move_phase(const LevelGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  constexpr double kGainEps = 1e-12;
  std::vector<std::uint32_t> order(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) order[v] = v;
  for (std::size_t i = g.n; i > 1; --i)
    std::swap(order[i - 1], order[rng.bounded(i)]);

  std::vector<double> tot(g.n, 0.0);
  for (std::size_t v = 0; v < g.n; ++v) tot[comm[v]] += g.degree[v];

  std::vector<double> k_in(g.n, 0.0);
  std::vector<std::uint32_t> seen;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t v : order) {
      const std::uint32_t home = comm[v];
      seen.clear();
      for (const auto& [u, w] : g.adj[v]) {
        const std::uint32_t c = comm[u];
        if (k_in[c] == 0.0) seen.push_back(c);
        k_in[c] += w;
      }
      std::sort(seen.begin(), seen.end());

      tot[home] -= g.degree[v];
      const double scale = g.degree[v] / (g.total > 0.0 ? g.total : 1.0);
      auto gain = [&](std::uint32_t c) { return k_in[c] - tot[c] * scale; };
      // candidates ascend, so with strict comparison the lowest community id
      // wins gain ties (including the tie against staying home)
      double best_gain = gain(home);
      std::uint32_t best = home;
      for (std::uint32_t c : seen) {
        if (c == home) continue;
        const double gc = gain(c);
        if (gc > best_gain + kGainEps) {
          best_gain = gc;
          best = c;
        }
      }
      tot[best] += g.degree[v];
      if (best != home) {
        comm[v] = best;
        moved = true;
        any_move = true;
      }
      for (std::uint32_t c : seen) k_in[c] = 0.0;
    }
  }
  return any_move;
}

// contiguous ids by first appearance over node order; returns community count
std::size_t renumber(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> remap(comm.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (remap[c] == UINT32_MAX) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& comm,
                     std::size_t community_count) {
  LevelGraph out;
  out.n = community_count;
  out.adj.resize(out.n);
  out.self_loop.assign(out.n, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> cross;
  for (std::size_t v = 0; v < g.n; ++v) {
    const std::uint32_t cv = comm[v];
    out.self_loop[cv] += g.self_loop[v];
    for (const auto& [u, w] : g.adj[v]) {
      if (u < v) continue;  // each undirected pair once
      const std::uint32_t cu = comm[u];
      if (cu == cv)
        out.self_loop[cv] += 2.0 * w;
      else
        cross[{std::min(cv, cu), std::max(cv, cu)}] += w;
    }
  }
  for (const auto& [key, w] : cross) {
    out.adj[key.first].emplace_back(key.second, w);
    out.adj[key.second].emplace_back(key.first, w);
  }
  for (auto& row : out.adj) std::sort(row.begin(), row.end());
  out.compute_degrees();
  return out;
}

}  // namespace

double modularity(const SimilarityGraph& g, const std::vector<std::uint32_t>& community) {
  if (community.size() != g.node_count)
    throw ValidateError("modularity: assignment does not match the graph");
  const double two_m = 2.0 * g.total_weight();
  if (two_m <= 0.0) return 0.0;
  double inside = 0.0;
  for (const auto& e : g.edges)
    if (community[e.a] == community[e.b]) inside += 2.0 * e.w;
  std::vector<double> tot(g.node_count, 0.0);
  for (std::size_t v = 0; v < g.node_count; ++v)
    tot[community[v]] += g.weighted_degree(static_cast<std::uint32_t>(v));
  double q = inside / two_m;
  for (double t : tot) q -= (t / two_m) * (t / two_m);
  return q;
}

CommunityAssignment louvain(const SimilarityGraph& g, std::uint64_t seed) {
  if (g.node_count == 0) throw ValidateError("louvain: empty graph");
  Rng rng(seed);

  // flat[v]: community of original node v, expressed at the current level
  std::vector<std::uint32_t> flat(g.node_count);
  for (std::uint32_t v = 0; v < g.node_count; ++v) flat[v] = v;

  CommunityAssignment result;
  LevelGraph level = level_from(g);
  std::vector<std::uint32_t> comm(level.n);
  for (std::uint32_t v = 0; v < level.n; ++v) comm[v] = v;

  while (true) {
    const bool moved = local_move_phase(level, comm, rng);
    const std::size_t count = renumber(comm);
    for (auto& c : flat) c = comm[c];
    result.pass_modularity.push_back(modularity(g, flat));
    if (!moved || count == level.n) break;
    level = aggregate(level, comm, count);
    comm.resize(count);
    for (std::uint32_t v = 0; v < count; ++v) comm[v] = v;
  }

  // final single-node refinement at the original level; keeps the result
  // locally optimal under single moves, which aggregation alone does not
  // guarantee
  {
    LevelGraph base = level_from(g);
    std::vector<std::uint32_t> refined = flat;
    // refined ids must be valid node-level community labels (< n); they are,
    // since flat was renumbered contiguously and count <= n
    if (local_move_phase(base, refined, rng)) {
      flat = refined;
      renumber(flat);
      result.pass_modularity.push_back(modularity(g, flat));
    }
  }

  result.community = flat;
  result.community_count = renumber(result.community);
  result.modularity = modularity(g, result.community);
  return result;
}

LayoutResult layout(const SimilarityGraph& g, const LayoutOptions& opts) {
  LayoutResult out;
  out.iterations = opts.iterations;
  out.seed = opts.seed;
  out.xy.assign(2 * g.node_count, 0.0);
  if (g.node_count == 0) return out;

  Rng rng(opts.seed);
  for (double& c : out.xy) c = rng.uniform01();
  if (g.node_count == 1) return out;

  const double k = std::sqrt(1.0 / static_cast<double>(g.node_count));
  const double t0 = 0.1;
  std::vector<double> disp(2 * g.node_count);
  for (std::size_t it = 0; it < opts.iterations; ++it) {
    std::fill(disp.begin(), disp.end(), 0.0);
    for (std::size_t a = 0; a < g.node_count; ++a) {
      for (std::size_t b = a + 1; b < g.node_count; ++b) {
        double dx = out.xy[2 * a] - out.xy[2 * b];
        double dy = out.xy[2 * a + 1] - out.xy[2 * b + 1];
        double dist = std::sqrt(dx * dx + dy * dy);
        if (dist < 1e-9) dist = 1e-9;
        const double f = opts.repulsion * k * k / dist / dist;
        disp[2 * a] += dx * f;
        disp[2 * a + 1] += dy * f;
        disp[2 * b] -= dx * f;
        disp[2 * b + 1] -= dy * f;
      }
    }
    for (const auto& e : g.edges) {
      double dx = out.xy[2 * e.a] - out.xy[2 * e.b];
      double dy = out.xy[2 * e.a + 1] - out.xy[2 * e.b + 1];
      double dist = std::sqrt(dx * dx + dy * dy);
      if (dist < 1e-9) dist = 1e-9;
      const double f = e.w * dist / k;
      disp[2 * e.a] -= dx * f;
      disp[2 * e.a + 1] -= dy * f;
      disp[2 * e.b] += dx * f;
      disp[2 * e.b + 1] += dy * f;
    }
    const double t = t0 * (1.0 - static_cast<double>(it + 1) /
                                     static_cast<double>(opts.iterations));
    for (std::size_t v = 0; v < g.node_count; ++v) {
      const double dx = disp[2 * v];
      const double dy = disp[2 * v + 1];
      const double len = std::sqrt(dx * dx + dy * dy);
      if (len <= 0.0) continue;
      const double step = std::min(len, t);
      out.xy[2 * v] += dx / len * step;
      out.xy[2 * v + 1] += dy / len * step;
    }
  }

  // deterministic jitter for exactly coincident nodes
  std::map<std::pair<double, double>, std::size_t> seen;
  for (std::size_t v = 0; v < g.node_count; ++v) {
    auto key = std::make_pair(out.xy[2 * v], out.xy[2 * v + 1]);
    auto [it, inserted] = seen.emplace(key, 0);
    if (!inserted) {
      const std::size_t rank = ++it->second;
      const double angle = 2.399963229728653 * static_cast<double>(v + 1);
      const double r = 1e-6 * static_cast<double>(rank);
      out.xy[2 * v] += r * std::cos(angle);
      out.xy[2 * v + 1] += r * std::sin(angle);
    }
  }
  return out;
}

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "graphml") return GraphFormat::graphml;
  if (name == "dot") return GraphFormat::dot;
  throw ValidateError("unknown graph format: " + name);
}

namespace {

std::string fmt_weight(double w) { return format_double(w); }

}  // namespace

std::string to_graphml(const SimilarityGraph& g, const CommunityAssignment* communities,
                       const LayoutResult* positions) {
  if (communities != nullptr && communities->community.size() != g.node_count)
    throw ValidateError("to_graphml: community assignment does not match the graph");
  if (positions != nullptr && positions->xy.size() != 2 * g.node_count)
    throw ValidateError("to_graphml: layout does not match the graph");

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"radius\" for=\"node\" attr.name=\"radius\" attr.type=\"long\"/>\n"
      "  <key id=\"poprank\" for=\"node\" attr.name=\"poprank\" attr.type=\"long\"/>\n";
  if (communities != nullptr)
    out +=
        "  <key id=\"community\" for=\"node\" attr.name=\"community\" "
        "attr.type=\"long\"/>\n";
  if (positions != nullptr)
    out +=
        "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
        "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
  out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  out += "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < g.node_count; ++v) {
    out += "    <node id=\"n" + std::to_string(v) + "\">";
    out += "<data key=\"radius\">" + std::to_string(g.radius[v]) + "</data>";
    out += "<data key=\"poprank\">" + std::to_string(g.popularity_rank[v]) + "</data>";
    if (communities != nullptr)
      out += "<data key=\"community\">" + std::to_string(communities->community[v]) +
             "</data>";
    if (positions != nullptr) {
      out += "<data key=\"x\">" + fmt_weight(positions->xy[2 * v]) + "</data>";
      out += "<data key=\"y\">" + fmt_weight(positions->xy[2 * v + 1]) + "</data>";
    }
    out += "</node>\n";
  }
  for (const auto& e : g.edges) {
    out += "    <edge source=\"n" + std::to_string(e.a) + "\" target=\"n" +
           std::to_string(e.b) + "\"><data key=\"weight\">" + fmt_weight(e.w) +
           "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string to_dot(const SimilarityGraph& g, const CommunityAssignment* communities,
                   const LayoutResult* positions) {
  std::string out = "graph G {\n";
  for (std::size_t v = 0; v < g.node_count; ++v) {
    out += "  n" + std::to_string(v) + " [radius=" + std::to_string(g.radius[v]) +
           ", poprank=" + std::to_string(g.popularity_rank[v]);
    if (communities != nullptr)
      out += ", community=" + std::to_string(communities->community[v]);
    if (positions != nullptr)
      out += ", pos=\"" + fmt_weight(positions->xy[2 * v]) + "," +
             fmt_weight(positions->xy[2 * v + 1]) + "\"";
    out += "];\n";
  }
  for (const auto& e : g.edges)
    out += "  n" + std::to_string(e.a) + " -- n" + std::to_string(e.b) +
           " [weight=" + fmt_weight(e.w) + "];\n";
  out += "}\n";
  return out;
}

namespace {

// minimal tag scanner for the writer's own output
struct TagView {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::string text;  // inner text for <data> elements
};

std::size_t scan_tag(const std::string& s, std::size_t pos, TagView& tag) {
  std::size_t open = s.find('<', pos);
  if (open == std::string::npos) return std::string::npos;
  std::size_t close = s.find('>', open);
  if (close == std::string::npos) throw ParseError("graphml: unterminated tag");
  std::string inside = s.substr(open + 1, close - open - 1);
  if (!inside.empty() && inside.back() == '/') inside.pop_back();
  std::size_t name_end = inside.find_first_of(" \t");
  tag.name = inside.substr(0, name_end);
  tag.attrs.clear();
  tag.text.clear();
  if (name_end != std::string::npos) {
    std::size_t p = name_end;
    while (p < inside.size()) {
      while (p < inside.size() && (inside[p] == ' ' || inside[p] == '\t')) ++p;
      std::size_t eq = inside.find('=', p);
      if (eq == std::string::npos) break;
      std::string key = inside.substr(p, eq - p);
      std::size_t q1 = inside.find('"', eq);
      std::size_t q2 = q1 == std::string::npos ? std::string::npos : inside.find('"', q1 + 1);
      if (q2 == std::string::npos) throw ParseError("graphml: bad attribute");
      tag.attrs[key] = inside.substr(q1 + 1, q2 - q1 - 1);
      p = q2 + 1;
    }
  }
  return close + 1;
}

}  // namespace

LoadedGraph parse_graphml(const std::string& content) try {
  LoadedGraph out;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
  std::vector<std::size_t> radii, popranks;
  std::vector<std::uint32_t> comms;
  std::vector<double> xs, ys;

  auto node_id = [](const std::string& s) -> std::uint32_t {
    if (s.empty() || s[0] != 'n') throw ParseError("graphml: bad node id: " + s);
    std::uint32_t v = 0;
    auto r = std::from_chars(s.data() + 1, s.data() + s.size(), v);
    if (r.ec != std::errc()) throw ParseError("graphml: bad node id: " + s);
    return v;
  };

  std::size_t pos = 0;
  TagView tag;
  std::string context;  // "node" or "edge"
  std::uint32_t cur_a = 0, cur_b = 0;
  double cur_w = 1.0;
  while ((pos = scan_tag(content, pos, tag)) != std::string::npos) {
    if (tag.name == "node") {
      context = "node";
      const std::uint32_t v = node_id(tag.attrs.at("id"));
      if (radii.size() <= v) {
        radii.resize(v + 1, 0);
        popranks.resize(v + 1, 0);
        comms.resize(v + 1, 0);
        xs.resize(v + 1, 0.0);
        ys.resize(v + 1, 0.0);
      }
      cur_a = v;
    } else if (tag.name == "edge") {
      context = "edge";
      cur_a = node_id(tag.attrs.at("source"));
      cur_b = node_id(tag.attrs.at("target"));
      cur_w = 1.0;
    } else if (tag.name == "data") {
      const std::string key = tag.attrs.at("key");
      std::size_t end = content.find("</data>", pos);
      if (end == std::string::npos) throw ParseError("graphml: unterminated data");
      const std::string text = content.substr(pos, end - pos);
      pos = end + 7;
      double value = 0.0;
      auto r = std::from_chars(text.data(), text.data() + text.size(), value);
      if (r.ec != std::errc()) throw ParseError("graphml: bad data value: " + text);
      if (context == "node") {
        if (key == "radius") radii[cur_a] = static_cast<std::size_t>(value);
        else if (key == "poprank") popranks[cur_a] = static_cast<std::size_t>(value);
        else if (key == "community") {
          comms[cur_a] = static_cast<std::uint32_t>(value);
          out.has_communities = true;
        } else if (key == "x") {
          xs[cur_a] = value;
          out.has_layout = true;
        } else if (key == "y") {
          ys[cur_a] = value;
        }
      } else if (context == "edge" && key == "weight") {
        cur_w = value;
      }
    } else if (tag.name == "/edge") {
      edges.emplace_back(cur_a, cur_b, cur_w);
      context.clear();
    }
  }

  out.graph.node_count = radii.size();
  out.graph.radius = radii;
  out.graph.popularity_rank = popranks;
  for (auto& [a, b, w] : edges)
    out.graph.edges.push_back({std::min(a, b), std::max(a, b), w});
  std::sort(out.graph.edges.begin(), out.graph.edges.end(),
            [](const auto& x, const auto& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  build_adjacency(out.graph);
  if (out.has_communities) {
    out.communities.community = comms;
    out.communities.community_count =
        comms.empty() ? 0 : *std::max_element(comms.begin(), comms.end()) + 1;
    out.communities.modularity = modularity(out.graph, comms);
  }
  if (out.has_layout) {
    out.positions.xy.resize(2 * out.graph.node_count);
    for (std::size_t v = 0; v < out.graph.node_count; ++v) {
      out.positions.xy[2 * v] = xs[v];
      out.positions.xy[2 * v + 1] = ys[v];
    }
  }
  return out;
} catch (const std::out_of_range&) {
  throw ParseError("graphml: missing required attribute");
}

LoadedGraph read_graphml(const std::string& path) {
  return parse_graphml(read_file(path));
}

}  // namespace recsys
