#include <doctest.h>

#include <cmath>

#include "polyurn/exactlin.hpp"
#include "polyurn/rng.hpp"
#include "../support/oracles.hpp"
#include "../support/random_hypergraph.hpp"

using namespace polyurn;
using polyurn::testing::bareiss_rank_oracle;
using polyurn::testing::incidence_int;

namespace {

bool annihilates(const Hypergraph& h, const std::vector<Rational>& vec, bool with_ones_row) {
    for (int e = 0; e < h.edge_count(); ++e) {
        Rational dot(0);
        for (int v : h.edge(e)) dot += vec[v];
        if (!dot.is_zero()) return false;
    }
    if (with_ones_row) {
        Rational total(0);
        for (const auto& c : vec) total += c;
        if (!total.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("exact ranks match the independent elimination oracle") {
    Hypergraph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(rank(incidence_rational(triangle)) == 3);
    CHECK(bareiss_rank_oracle(incidence_int(triangle)) == 3);

    Hypergraph single = builtin("single_edge(3)");
    CHECK(rank(incidence_rational(single)) == 1);

    // duplicate edges contribute identical rows
    Hypergraph dup(2, {{0, 1}, {0, 1}});
    CHECK(dup.edge_count() == 2);
    CHECK(rank(incidence_rational(dup)) == 1);

    Hypergraph cube = builtin("cube");
    CHECK(rank(incidence_rational(cube)) == 4);
    CHECK(bareiss_rank_oracle(incidence_int(cube)) == 4);

    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Hypergraph h = polyurn::testing::random_hypergraph(rng);
        CHECK(rank(incidence_rational(h)) == bareiss_rank_oracle(incidence_int(h)));
    }
}

TEST_CASE("tangent kernel dims for the named hypergraphs") {
    CHECK(tangent_kernel(builtin("tetrahedron")).dim() == 0);
    CHECK(tangent_kernel(builtin("cube")).dim() == 4);
    CHECK(tangent_kernel(builtin("octahedron")).dim() == 2);
    CHECK(tangent_kernel(builtin("single_edge(3)")).dim() == 2);
    CHECK(full_kernel(builtin("single_edge(3)")).dim() == 2);
}

TEST_CASE("path(3) separates the full and tangent kernels") {
    Hypergraph path = builtin("path(3)");
    KernelBasis full = full_kernel(path);
    REQUIRE(full.dim() == 1);
    // the kernel line is spanned by (1,-1,1)
    const auto& vec = full.basis[0];
    CHECK(vec[0] == -vec[1]);
    CHECK(vec[0] == vec[2]);
    CHECK(!vec[0].is_zero());
    CHECK(tangent_kernel(path).dim() == 0);
}

TEST_CASE("kernel vectors are annihilated exactly and are independent") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Hypergraph h = polyurn::testing::random_hypergraph(rng);
        KernelBasis tk = tangent_kernel(h);
        for (const auto& vec : tk.basis) {
            CHECK(annihilates(h, vec, true));
        }
        // rank-nullity against the stacked matrix
        RationalMatrix stacked(h.edge_count() + 1, h.vertex_count());
        for (int e = 0; e < h.edge_count(); ++e) {
            for (int v : h.edge(e)) stacked.at(e, v) = Rational(1);
        }
        for (int v = 0; v < h.vertex_count(); ++v) stacked.at(h.edge_count(), v) = Rational(1);
        CHECK(tk.dim() == h.vertex_count() - rank(stacked));

        if (tk.dim() > 0) {
            // stacked basis has full rank = dim
            RationalMatrix basis_matrix(tk.dim(), h.vertex_count());
            for (int r = 0; r < tk.dim(); ++r) {
                for (int c = 0; c < h.vertex_count(); ++c) basis_matrix.at(r, c) = tk.basis[r][c];
            }
            CHECK(rank(basis_matrix) == tk.dim());
        }

        for (const auto& vec : full_kernel(h).basis) {
            CHECK(annihilates(h, vec, false));
        }
    }
}

TEST_CASE("affine projection") {
    Hypergraph cube = builtin("cube");
    KernelBasis k = tangent_kernel(cube);
    std::vector<double> w(8, 0.125);

    auto at_base = project_affine(w, w, k);
    CHECK(at_base.distance == doctest::Approx(0.0).epsilon(1e-14));

    // base plus a kernel vector lies in the affine set
    auto kd = basis_as_doubles(k);
    std::vector<double> shifted = w;
    for (int i = 0; i < 8; ++i) shifted[i] += 0.01 * kd[0][i];
    CHECK(project_affine(shifted, w, k).distance < 1e-12);

    // k = 0: projection collapses to the base point
    KernelBasis trivial = tangent_kernel(builtin("tetrahedron"));
    std::vector<double> base4{0.25, 0.25, 0.25, 0.25};
    std::vector<double> x4{0.7, 0.1, 0.1, 0.1};
    auto collapsed = project_affine(x4, base4, trivial);
    CHECK(collapsed.point == base4);

    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> x(8);
        for (double& c : x) c = rng.uniform();
        auto got = project_affine(x, w, k);
        auto want = polyurn::testing::normal_equations_projection(x, w, basis_as_doubles(k));
        for (int i = 0; i < 8; ++i) CHECK(got.point[i] == doctest::Approx(want[i]).epsilon(1e-10));

        // idempotence
        auto again = project_affine(got.point, w, k);
        double drift = 0;
        for (int i = 0; i < 8; ++i) drift = std::max(drift, std::abs(again.point[i] - got.point[i]));
        CHECK(drift < 1e-12);
    }
}

TEST_CASE("platonic kernel coincidence") {
    for (const char* name : {"tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron"}) {
        Hypergraph h = builtin(name);
        CHECK(full_kernel(h).dim() == tangent_kernel(h).dim());
    }
}
