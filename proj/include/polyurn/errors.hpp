#ifndef POLYURN_ERRORS_HPP
#define POLYURN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyurn {

enum class errc {
    zero_vertices,
    empty_edge,
    vertex_out_of_range,
    isolated_vertex,
    unknown_name,
    parse_error,
    degenerate_edge_sum,
    step_too_large,
    domain_exit,
    edge_misses_support,
    not_an_equilibrium,
    not_interior,
    overflow,
    invalid_argument,
};

/// Exception carrying a machine-checkable error code alongside the message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_vertices: return "ZeroVertices";
        case errc::empty_edge: return "EmptyEdge";
        case errc::vertex_out_of_range: return "VertexOutOfRange";
        case errc::isolated_vertex: return "IsolatedVertex";
        case errc::unknown_name: return "UnknownName";
        case errc::parse_error: return "ParseError";
        case errc::degenerate_edge_sum: return "DegenerateEdgeSum";
        case errc::step_too_large: return "StepTooLarge";
        case errc::domain_exit: return "DomainExit";
        case errc::edge_misses_support: return "EdgeMissesSupport";
        case errc::not_an_equilibrium: return "NotAnEquilibrium";
        case errc::not_interior: return "NotInterior";
        case errc::overflow: return "Overflow";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace polyurn

#endif  // POLYURN_ERRORS_HPP
