#ifndef POLYURN_HYPERGRAPH_HPP
#define POLYURN_HYPERGRAPH_HPP

#include <string>
#include <vector>

namespace polyurn {

/**
 * Finite hypergraph on vertices {0..m-1}.
 *
 * Hyperedges form an ordered list; duplicate edges are allowed and count as
 * distinct rows of the incidence matrix. After construction every edge is a
 * sorted set of distinct vertices, the edge list is sorted lexicographically,
 * and every vertex is covered by at least one edge.
 */
class Hypergraph {
public:
    /// Validates and normalizes; throws polyurn::error on malformed input.
    Hypergraph(int vertex_count, std::vector<std::vector<int>> edges);

    int vertex_count() const { return m_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& edge(int index) const { return edges_.at(index); }

    /// Indices of all edges containing vertex i, in edge-list order.
    const std::vector<int>& star(int vertex) const;

    bool operator==(const Hypergraph&) const = default;

private:
    int m_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::vector<int>> stars_;  // stars_[i] = edges containing i
};

/// 0/1 incidence matrix, rows indexed by edges and columns by vertices.
struct IncidenceMatrix {
    int rows = 0;  // number of edges
    int cols = 0;  // number of vertices
    std::vector<int> entries;  // row-major

    int at(int edge, int vertex) const { return entries[static_cast<size_t>(edge) * cols + vertex]; }
};

IncidenceMatrix incidence(const Hypergraph& h);

/// Named hypergraphs: the five platonic solids (faces as hyperedges) plus
/// small parametric families. Accepted names: tetrahedron, cube, octahedron,
/// icosahedron, dodecahedron, single_edge(m), cycle(m), path(m),
/// complete_graph(m).
Hypergraph builtin(const std::string& name);

/// Canonical JSON form: {"m":<int>,"edges":[[...],...]} with no whitespace.
std::string serialize(const Hypergraph& h);
Hypergraph parse_hypergraph(const std::string& json_text);

/// Accepts either a "builtin:<name>" spec or a path to a JSON file.
Hypergraph load_hypergraph(const std::string& source);

}  // namespace polyurn

#endif  // POLYURN_HYPERGRAPH_HPP
