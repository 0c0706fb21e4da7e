#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recsys/similarity.hpp"

namespace recsys {

/// Weighted undirected similarity graph; nodes carry their similarity
/// radius (drawn as node size) and popularity rank.
struct SimilarityGraph {
  struct Edge {
    std::uint32_t a;
    std::uint32_t b;
    double w;
  };

  std::size_t node_count = 0;
  EntityKind kind = EntityKind::user;
  std::vector<Edge> edges;  // a < b, sorted
  std::vector<std::size_t> radius;
  std::vector<std::size_t> popularity_rank;  // 1-based

  std::span<const std::pair<std::uint32_t, double>> neighbors(std::uint32_t v) const;
  double weighted_degree(std::uint32_t v) const;
  double total_weight() const;  // sum of edge weights

  // filled by build_graph
  std::vector<std::size_t> row_offset;
  std::vector<std::pair<std::uint32_t, double>> adjacency;
};

/// One edge per stored similarity pair with sim > threshold. At the default
/// threshold 0 the node degree equals its similarity radius. Popularity
/// ranks come from the optional order (entity indices, most popular first);
/// without it, ranks follow the node index.
SimilarityGraph build_graph(const SimilarityMatrix&, double threshold,
                            const RadiusVector& radii,
                            const std::vector<std::uint32_t>* popularity_order = nullptr);

struct CommunityAssignment {
  std::vector<std::uint32_t> community;  // node -> contiguous 0-based id
  std::size_t community_count = 0;
  double modularity = 0.0;
  std::vector<double> pass_modularity;  // Q after each outer pass, monotone
};

/// Two-phase greedy modularity optimization: seeded node visit order, gain
/// ties break toward the lowest community id, aggregation until no move,
/// then a final single-node refinement sweep at the original level. Reported
/// modularity is recomputed from the final assignment on the input graph.
CommunityAssignment louvain(const SimilarityGraph&, std::uint64_t seed);

/// Weighted modularity of an assignment (edgeless graphs score 0).
double modularity(const SimilarityGraph&, const std::vector<std::uint32_t>& community);

struct LayoutOptions {
  std::size_t iterations = 200;
  std::uint64_t seed = 1;
  double repulsion = 1.0;  // scale on the pairwise repulsive term
};

struct LayoutResult {
  std::vector<double> xy;  // 2*node_count
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

/// Spring layout: seeded positions in the unit square, edge attraction
/// d^2/k, pairwise repulsion k^2/d, displacement capped by a temperature
/// cooling linearly to zero. Deterministic; coincident nodes get a tiny
/// deterministic jitter afterwards.
LayoutResult layout(const SimilarityGraph&, const LayoutOptions&);

enum class GraphFormat { graphml, dot };
GraphFormat parse_graph_format(const std::string& name);

std::string to_graphml(const SimilarityGraph&, const CommunityAssignment* = nullptr,
                       const LayoutResult* = nullptr);
std::string to_dot(const SimilarityGraph&, const CommunityAssignment* = nullptr,
                   const LayoutResult* = nullptr);

/// Reads graphs produced by to_graphml (attribute subset, not a general
/// GraphML implementation); used by the plot pipeline.
struct LoadedGraph {
  SimilarityGraph graph;
  CommunityAssignment communities;
  LayoutResult positions;
  bool has_communities = false;
  bool has_layout = false;
};
LoadedGraph parse_graphml(const std::string& content);
LoadedGraph read_graphml(const std::string& path);

}  // namespace recsys
