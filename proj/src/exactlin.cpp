#include "polyurn/exactlin.hpp"

#include <cmath>

#include "polyurn/errors.hpp"

namespace polyurn {

RationalMatrix incidence_rational(const Hypergraph& h) {
    RationalMatrix m(h.edge_count(), h.vertex_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        for (int v : h.edge(e)) {
            m.at(e, v) = Rational(1);
        }
    }
    return m;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RationalMatrix& m) {
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
        }
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational factor = m.at(r, col);
            for (int c = col; c < m.cols(); ++c) {
                m.at(r, c) -= factor * m.at(row, c);
            }
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

}  // namespace

int rank(RationalMatrix m) {
    return static_cast<int>(rref(m).size());
}

KernelBasis kernel(const RationalMatrix& m_in) {
    RationalMatrix m = m_in;
    std::vector<int> pivot_cols = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivot_cols) is_pivot[c] = true;

    KernelBasis out;
    out.ambient = m.cols();
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> vec(m.cols());
        vec[free_col] = Rational(1);
        for (size_t p = 0; p < pivot_cols.size(); ++p) {
            vec[pivot_cols[p]] = -m.at(static_cast<int>(p), free_col);
        }
        out.basis.push_back(std::move(vec));
    }
    return out;
}

KernelBasis tangent_kernel(const Hypergraph& h) {
    RationalMatrix stacked(h.edge_count() + 1, h.vertex_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        for (int v : h.edge(e)) stacked.at(e, v) = Rational(1);
    }
    for (int v = 0; v < h.vertex_count(); ++v) stacked.at(h.edge_count(), v) = Rational(1);
    return kernel(stacked);
}

KernelBasis full_kernel(const Hypergraph& h) {
    return kernel(incidence_rational(h));
}

std::vector<std::vector<double>> basis_as_doubles(const KernelBasis& k) {
    std::vector<std::vector<double>> out;
    out.reserve(k.basis.size());
    for (const auto& vec : k.basis) {
        std::vector<double> row;
        row.reserve(vec.size());
        for (const auto& q : vec) row.push_back(q.to_double());
        out.push_back(std::move(row));
    }
    return out;
}

AffineProjection project_affine(const std::vector<double>& x, const std::vector<double>& base,
                                const KernelBasis& k) {
    if (x.size() != base.size() || (k.dim() > 0 && static_cast<int>(x.size()) != k.ambient)) {
        throw error(errc::invalid_argument, "project_affine: dimension mismatch");
    }
    size_t m = x.size();

    // Orthonormalize the kernel basis; one re-orthogonalization pass.
    std::vector<std::vector<double>> q = basis_as_doubles(k);
    std::vector<std::vector<double>> ortho;
    for (auto& v : q) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : ortho) {
                double dot = 0;
                for (size_t i = 0; i < m; ++i) dot += v[i] * u[i];
                for (size_t i = 0; i < m; ++i) v[i] -= dot * u[i];
            }
        }
        double norm = 0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-14) continue;  // dependent direction, cannot happen for a true basis
        for (double& c : v) c /= norm;
        ortho.push_back(std::move(v));
    }

    AffineProjection result;
    result.point = base;
    std::vector<double> d(m);
    for (size_t i = 0; i < m; ++i) d[i] = x[i] - base[i];
    for (const auto& u : ortho) {
        double dot = 0;
        for (size_t i = 0; i < m; ++i) dot += d[i] * u[i];
        for (size_t i = 0; i < m; ++i) result.point[i] += dot * u[i];
    }
    double dist = 0;
    for (size_t i = 0; i < m; ++i) {
        double diff = x[i] - result.point[i];
        dist += diff * diff;
    }
    result.distance = std::sqrt(dist);
    return result;
}

}  // namespace polyurn
