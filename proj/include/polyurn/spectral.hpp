#ifndef POLYURN_SPECTRAL_HPP
#define POLYURN_SPECTRAL_HPP

#include <vector>

#include <Eigen/Core>

#include "polyurn/dynamics.hpp"
#include "polyurn/exactlin.hpp"
#include "polyurn/hypergraph.hpp"

namespace polyurn {

struct SpectrumReport {
    std::vector<double> eigenvalues;  // m-1 values, ascending: the drift Jacobian on the zero-sum hyperplane
    int n_negative = 0;
    int n_zero = 0;
    int n_positive = 0;
    int k_expected = 0;      // dim of the tangent kernel
    int rank_jf = 0;         // numerical rank of the full Jacobian
    int rank_incidence = 0;  // exact rank of the incidence matrix
    double zero_threshold = 0.0;
    double max_imaginary = 0.0;  // largest imaginary part seen (direct path)
    std::vector<double> point;
};

/**
 * Spectrum of the drift Jacobian restricted to the zero-sum hyperplane at an
 * equilibrium w.
 *
 * interior=false: restricts the Jacobian with an orthonormal basis of the
 * hyperplane and runs a general eigensolver.
 *
 * interior=true: uses the symmetric similar matrix D^{1/2} Hess D^{1/2}
 * (D = diag(w)), whose spectrum equals the full Jacobian spectrum; the single
 * eigenvalue -1 carried by the direction leaving the simplex is removed to
 * obtain the restricted spectrum. Requires all coordinates positive.
 *
 * Throws NotAnEquilibrium when the drift residual exceeds residual_tol.
 */
SpectrumReport restricted_spectrum(const Hypergraph& h, const SimplexPoint& w, bool interior,
                                   double residual_tol = 1e-8);

struct RankIdentityReport {
    // max-norm of Hess(L) + (1/N) E^t E with E the edge-sum-scaled incidence matrix
    double factorization_error = 0.0;
    int rank_jf = 0;
    int rank_incidence = 0;
    bool ranks_match = false;
};

/// Checks the interior-equilibrium identities: the Hessian factors through the
/// scaled incidence matrix and the Jacobian rank equals the incidence rank.
RankIdentityReport rank_identities(const Hypergraph& h, const SimplexPoint& w,
                                   double residual_tol = 1e-8);

/// Numerical rank of the drift Jacobian at a point with positive edge sums.
int boundary_rank(const Hypergraph& h, const SimplexPoint& w);

/// Drift Jacobian evaluated in exact rational arithmetic.
RationalMatrix field_jacobian_exact(const Hypergraph& h, const std::vector<Rational>& w);

/// Exact rank of the rational drift Jacobian; for points with rational
/// coordinates this is the true rank, free of thresholds.
int boundary_rank_exact(const Hypergraph& h, const std::vector<Rational>& w);

/// Orthonormal basis of the zero-sum hyperplane, rows of an (m-1) x m matrix.
Eigen::MatrixXd tangent_basis(int m);

}  // namespace polyurn

#endif  // POLYURN_SPECTRAL_HPP
