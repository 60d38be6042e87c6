#ifndef POLYURN_EQUILIBRIA_HPP
#define POLYURN_EQUILIBRIA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyurn/dynamics.hpp"
#include "polyurn/exactlin.hpp"
#include "polyurn/hypergraph.hpp"

namespace polyurn {

/// Nonempty sorted set of vertices carrying the mass of a face.
struct Support {
    std::vector<int> members;

    static Support full(int m);
    static Support of(std::vector<int> members);
    bool contains(int v) const;
};

enum class Stability { unstable, non_unstable };

struct SolverOptions {
    double tolerance = 1e-12;        // stop when max_i |v_i * grad_i| < tolerance
    long max_iterations = 1000000;
    double eps_zero = 1e-9;          // coordinate considered zero below this
    double eps_gradient = 1e-7;      // positive-gradient threshold for instability
    bool keep_trace = false;         // record the Lyapunov value of each accepted iterate
};

struct EquilibriumRecord {
    SimplexPoint point;
    Support support;                  // effective support of `point`
    std::vector<double> gradient;     // Lyapunov gradient at `point`
    Stability classification = Stability::non_unstable;
    std::optional<int> witness;       // zero coordinate with positive gradient
    double residual = 0.0;            // max_i |point_i * gradient_i|
    double max_support_gradient = 0.0;
    bool converged = false;
    long iterations = 0;
    std::vector<double> lyapunov_trace;  // filled when SolverOptions::keep_trace
};

/**
 * Maximize the Lyapunov function on the face spanned by `face`. The primary
 * iteration is the multiplicative update v_i <- (v_i/N) sum_{I contains i} 1/v_I,
 * which preserves the simplex when every edge meets the face; each iterate is
 * accepted only if the Lyapunov value does not decrease, otherwise one
 * projected-gradient ascent step with backtracking is taken instead.
 *
 * Throws EdgeMissesSupport if some edge has no vertex in `face`. When the
 * iteration limit is hit the best iterate is returned with converged=false.
 */
EquilibriumRecord find_equilibrium(const Hypergraph& h, const Support& face,
                                   std::optional<SimplexPoint> start = std::nullopt,
                                   const SolverOptions& opts = {});

/// Unstable iff some coordinate below eps_zero has gradient above
/// eps_gradient. Rewrites classification/witness on the record.
Stability classify_equilibrium(const Hypergraph& h, EquilibriumRecord& rec,
                               double eps_zero = 1e-9, double eps_gradient = 1e-7);

/// True iff a.point - b.point lies in span(kernel) within `tol` (Euclidean
/// distance of the difference to the span).
bool same_coset(const EquilibriumRecord& a, const EquilibriumRecord& b, const KernelBasis& kernel,
                double tol);

struct LimitCandidateSet {
    std::optional<EquilibriumRecord> base;  // non-unstable equilibrium
    KernelBasis kernel;
    bool boundary_only = false;
    std::string note;
};

/// Full-support solve plus the tangent kernel; flags boundary_only when no
/// interior equilibrium exists.
LimitCandidateSet limit_candidates(const Hypergraph& h, const SolverOptions& opts = {});

struct PendantTriple {
    int edge;
    int pendant;  // vertex contained only in `edge`
    int shared;   // vertex of `edge` contained in more than one edge
};

/// All (I, i, j) with star(i) == {I} and |star(j)| > 1 for j in I. A nonempty
/// result forces the process onto the simplex boundary.
std::vector<PendantTriple> detect_pendants(const Hypergraph& h);

struct RadialSample {
    std::vector<double> point;
    double f_value;
    double kernel_distance;  // distance of (point - base) to span(kernel)
};

struct RadialCheckReport {
    double f_at_base = 0.0;
    double min_f = 0.0;
    double max_f = 0.0;
    // smallest f among samples at kernel distance >= 0.01 (transverse samples)
    double min_transverse_f = 0.0;
    int transverse_samples = 0;
    // largest f among points constructed inside base + kernel
    double max_coset_f = 0.0;
    int coset_points = 0;
    bool all_nonnegative = false;
    std::vector<RadialSample> samples;
};

/**
 * Samples the comparison function f(v) = -1 + (1/N) sum_I w_I / v_I on the
 * region {v in simplex : v_i >= chi for i in support(w)}. f is convex, zero
 * exactly on the kernel coset of w, and strictly positive off it.
 */
RadialCheckReport radial_minimum_check(const Hypergraph& h, const EquilibriumRecord& w,
                                       int samples, double chi, std::uint64_t seed = 0);

}  // namespace polyurn

#endif  // POLYURN_EQUILIBRIA_HPP
