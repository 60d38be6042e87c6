#ifndef POLYURN_EXACTLIN_HPP
#define POLYURN_EXACTLIN_HPP

#include <vector>

#include "polyurn/hypergraph.hpp"
#include "polyurn/rational.hpp"

namespace polyurn {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> a_;
};

RationalMatrix incidence_rational(const Hypergraph& h);

/// Exact rank by rational Gaussian elimination.
int rank(RationalMatrix m);

/**
 * Basis of an exact null space. Each basis vector x satisfies M.x = 0
 * with zero tolerance; vectors are linearly independent by construction.
 */
struct KernelBasis {
    int ambient = 0;
    std::vector<std::vector<Rational>> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

KernelBasis kernel(const RationalMatrix& m);

/// Kernel of the incidence matrix restricted to the zero-sum hyperplane,
/// realized as the kernel of the incidence matrix with an all-ones row stacked on.
KernelBasis tangent_kernel(const Hypergraph& h);

/// Plain kernel of the incidence matrix, no zero-sum constraint.
KernelBasis full_kernel(const Hypergraph& h);

/// Euclidean projection of x onto the affine set base + span(kernel).
struct AffineProjection {
    std::vector<double> point;
    double distance = 0.0;
};

AffineProjection project_affine(const std::vector<double>& x, const std::vector<double>& base,
                                const KernelBasis& k);

/// Kernel basis vectors converted to floating point, one row per vector.
std::vector<std::vector<double>> basis_as_doubles(const KernelBasis& k);

}  // namespace polyurn

#endif  // POLYURN_EXACTLIN_HPP
