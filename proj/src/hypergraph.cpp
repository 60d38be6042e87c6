#include "polyurn/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polyurn/errors.hpp"

namespace polyurn {

Hypergraph::Hypergraph(int vertex_count, std::vector<std::vector<int>> edges) : m_(vertex_count) {
    if (m_ <= 0) {
        throw error(errc::zero_vertices, "hypergraph needs at least one vertex");
    }
    for (auto& e : edges) {
        if (e.empty()) {
            throw error(errc::empty_edge, "hyperedge must be nonempty");
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        for (int v : e) {
            if (v < 0 || v >= m_) {
                throw error(errc::vertex_out_of_range,
                            "vertex " + std::to_string(v) + " outside 0.." + std::to_string(m_ - 1));
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges_ = std::move(edges);

    stars_.assign(m_, {});
    for (int idx = 0; idx < edge_count(); ++idx) {
        for (int v : edges_[idx]) {
            stars_[v].push_back(idx);
        }
    }
    for (int v = 0; v < m_; ++v) {
        if (stars_[v].empty()) {
            throw error(errc::isolated_vertex, "vertex " + std::to_string(v) + " belongs to no hyperedge");
        }
    }
}

const std::vector<int>& Hypergraph::star(int vertex) const {
    if (vertex < 0 || vertex >= m_) {
        throw error(errc::vertex_out_of_range, "star: vertex " + std::to_string(vertex) + " out of range");
    }
    return stars_[vertex];
}

IncidenceMatrix incidence(const Hypergraph& h) {
    IncidenceMatrix mat;
    mat.rows = h.edge_count();
    mat.cols = h.vertex_count();
    mat.entries.assign(static_cast<size_t>(mat.rows) * mat.cols, 0);
    for (int e = 0; e < mat.rows; ++e) {
        for (int v : h.edge(e)) {
            mat.entries[static_cast<size_t>(e) * mat.cols + v] = 1;
        }
    }
    return mat;
}

namespace {

Hypergraph make_tetrahedron() {
    return Hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Fixed labeling: top face {0,1,2,3}, bottom face {4,5,6,7}, vertex i
// directly above vertex i+4. The exact-jacobian tests pin this list.
Hypergraph make_cube() {
    return Hypergraph(8, {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {0, 4, 7, 3}});
}

// Vertices 0..5 = +x,+y,+z,-x,-y,-z; faces are the octants.
Hypergraph make_octahedron() {
    return Hypergraph(6, {{0, 1, 2}, {0, 1, 5}, {0, 4, 2}, {0, 4, 5}, {3, 1, 2}, {3, 1, 5}, {3, 4, 2}, {3, 4, 5}});
}

// Pole 0, upper pentagon 1..5, lower pentagon 6..10, pole 11.
std::vector<std::vector<int>> icosahedron_faces() {
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 5; ++i) {
        int u = 1 + i;
        int un = 1 + (i + 1) % 5;
        int l = 6 + i;
        int ln = 6 + (i + 1) % 5;
        faces.push_back({0, u, un});
        faces.push_back({u, un, l});
        faces.push_back({un, l, ln});
        faces.push_back({11, l, ln});
    }
    return faces;
}

Hypergraph make_icosahedron() { return Hypergraph(12, icosahedron_faces()); }

// Dual of the icosahedron: dodecahedron vertices are icosahedron faces,
// dodecahedron faces collect the five icosahedron faces around each vertex.
Hypergraph make_dodecahedron() {
    auto faces = icosahedron_faces();
    std::vector<std::vector<int>> dual_faces(12);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        for (int v : faces[f]) {
            dual_faces[v].push_back(f);
        }
    }
    return Hypergraph(20, dual_faces);
}

int parse_size_arg(const std::string& name, const std::string& inner) {
    try {
        size_t pos = 0;
        int m = std::stoi(inner, &pos);
        if (pos != inner.size() || m <= 0) {
            throw std::invalid_argument("size");
        }
        return m;
    } catch (const std::exception&) {
        throw error(errc::unknown_name, "bad size argument in builtin '" + name + "'");
    }
}

}  // namespace

Hypergraph builtin(const std::string& name) {
    if (name == "tetrahedron") return make_tetrahedron();
    if (name == "cube") return make_cube();
    if (name == "octahedron") return make_octahedron();
    if (name == "icosahedron") return make_icosahedron();
    if (name == "dodecahedron") return make_dodecahedron();

    auto open = name.find('(');
    if (open != std::string::npos && name.back() == ')') {
        std::string base = name.substr(0, open);
        int m = parse_size_arg(name, name.substr(open + 1, name.size() - open - 2));
        if (base == "single_edge") {
            std::vector<int> all(m);
            for (int i = 0; i < m; ++i) all[i] = i;
            return Hypergraph(m, {all});
        }
        if (base == "path") {
            if (m < 2) throw error(errc::unknown_name, "path(m) needs m >= 2");
            std::vector<std::vector<int>> edges;
            for (int i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
            return Hypergraph(m, edges);
        }
        if (base == "cycle") {
            if (m < 3) throw error(errc::unknown_name, "cycle(m) needs m >= 3");
            std::vector<std::vector<int>> edges;
            for (int i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
            return Hypergraph(m, edges);
        }
        if (base == "complete_graph") {
            if (m < 2) throw error(errc::unknown_name, "complete_graph(m) needs m >= 2");
            std::vector<std::vector<int>> edges;
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) edges.push_back({i, j});
            return Hypergraph(m, edges);
        }
    }
    throw error(errc::unknown_name, "unknown builtin hypergraph '" + name + "'");
}

std::string serialize(const Hypergraph& h) {
    std::ostringstream out;
    out << "{\"m\":" << h.vertex_count() << ",\"edges\":[";
    for (int e = 0; e < h.edge_count(); ++e) {
        if (e > 0) out << ',';
        out << '[';
        const auto& edge = h.edge(e);
        for (size_t i = 0; i < edge.size(); ++i) {
            if (i > 0) out << ',';
            out << edge[i];
        }
        out << ']';
    }
    out << "]}";
    return out.str();
}

Hypergraph parse_hypergraph(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::parse_error, std::string("hypergraph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j.contains("edges")) {
        throw error(errc::parse_error, "hypergraph JSON must be an object with fields \"m\" and \"edges\"");
    }
    if (!j["m"].is_number_integer()) {
        throw error(errc::parse_error, "field \"m\" must be an integer");
    }
    if (!j["edges"].is_array()) {
        throw error(errc::parse_error, "field \"edges\" must be an array of arrays");
    }
    std::vector<std::vector<int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array()) {
            throw error(errc::parse_error, "each edge must be an array of vertex indices");
        }
        std::vector<int> edge;
        for (const auto& v : e) {
            if (!v.is_number_integer()) {
                throw error(errc::parse_error, "vertex indices must be integers");
            }
            edge.push_back(v.get<int>());
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph(j["m"].get<int>(), std::move(edges));
}

Hypergraph load_hypergraph(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        return builtin(source.substr(8));
    }
    std::ifstream in(source);
    if (!in) {
        throw error(errc::parse_error, "cannot open hypergraph file '" + source + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hypergraph(buf.str());
}

}  // namespace polyurn
