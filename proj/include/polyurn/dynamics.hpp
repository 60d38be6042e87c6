#ifndef POLYURN_DYNAMICS_HPP
#define POLYURN_DYNAMICS_HPP

#include <vector>

#include <Eigen/Core>

#include "polyurn/hypergraph.hpp"

namespace polyurn {

/// Point of the probability simplex: nonnegative coordinates summing to 1.
/// Construction renormalizes; the sum must already be within 1e-12 of 1
/// after division (i.e. strictly positive input mass).
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    static SimplexPoint uniform(int m);
    /// Uniform mass on the given vertices, zero elsewhere.
    static SimplexPoint uniform_on(int m, const std::vector<int>& support);

    const std::vector<double>& coords() const { return v_; }
    double operator[](size_t i) const { return v_[i]; }
    int dim() const { return static_cast<int>(v_.size()); }

private:
    std::vector<double> v_;
};

/// Zero-sum vector, the tangent direction of the simplex interior.
class TangentVector {
public:
    explicit TangentVector(std::vector<double> u);
    const std::vector<double>& coords() const { return u_; }
    double operator[](size_t i) const { return u_[i]; }

private:
    std::vector<double> u_;
};

/// Flow domain: simplex points whose every edge sum is at least `cutoff`,
/// with 0 < cutoff < 1/N.
struct FlowDomain {
    double cutoff;

    /// Default choice cutoff = 1/(2N).
    static FlowDomain half_margin(const Hypergraph& h);
    static FlowDomain with_cutoff(const Hypergraph& h, double cutoff);
};

// Core evaluations take raw coordinate vectors so callers (finite-difference
// checks, integrators) can evaluate slightly off the simplex; the formulas
// only need positive edge sums. SimplexPoint overloads forward to these.

double edge_sum(const std::vector<double>& v, const std::vector<int>& edge);
double edge_sum(const SimplexPoint& v, const std::vector<int>& edge);

/// L(v) = -sum_i v_i + (1/N) sum_I log v_I.
double lyapunov(const Hypergraph& h, const std::vector<double>& v);
double lyapunov(const Hypergraph& h, const SimplexPoint& v);

/// dL/dv_i = -1 + (1/N) sum_{I contains i} 1/v_I.
std::vector<double> lyapunov_gradient(const Hypergraph& h, const std::vector<double>& v);
std::vector<double> lyapunov_gradient(const Hypergraph& h, const SimplexPoint& v);

/// d2L/dv_i dv_j = -(1/N) sum_{I contains i,j} 1/v_I^2; symmetric negative
/// semidefinite.
Eigen::MatrixXd lyapunov_hessian(const Hypergraph& h, const std::vector<double>& v);
Eigen::MatrixXd lyapunov_hessian(const Hypergraph& h, const SimplexPoint& v);

/// Mean drift F_i(v) = -v_i + (1/N) sum_{I contains i} v_i/v_I; zero-sum on
/// the simplex.
std::vector<double> vector_field(const Hypergraph& h, const std::vector<double>& v);
TangentVector vector_field(const Hypergraph& h, const SimplexPoint& v);

/// Jacobian of the drift: off-diagonal w_i * d2L/dv_i dv_j, diagonal
/// dL/dv_i + w_i * d2L/dv_i^2.
Eigen::MatrixXd field_jacobian(const Hypergraph& h, const std::vector<double>& w);
Eigen::MatrixXd field_jacobian(const Hypergraph& h, const SimplexPoint& w);

struct FlowSample {
    double t;
    SimplexPoint point;
    double lyapunov_value;
};

/**
 * Fixed-step RK4 integration of dv/dt = F(v), renormalized onto the simplex
 * after each step. The Lyapunov value must not drop by more than 1e-6 in a
 * single step (StepTooLarge) and every edge sum must stay >= domain.cutoff
 * (DomainExit). Samples are recorded every step, including t = 0.
 */
std::vector<FlowSample> flow_integrate(const Hypergraph& h, const SimplexPoint& start,
                                       const FlowDomain& domain, double t_final, double dt);

}  // namespace polyurn

#endif  // POLYURN_DYNAMICS_HPP
