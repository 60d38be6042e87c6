#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polyurn/dynamics.hpp"
#include "polyurn/errors.hpp"
#include "polyurn/rng.hpp"
#include "../support/oracles.hpp"
#include "../support/random_hypergraph.hpp"

using namespace polyurn;
using polyurn::testing::random_hypergraph;
using polyurn::testing::random_interior_point;

namespace {

// coset point of the cube with all six face sums equal to 1/2
const std::vector<double> kCubeCosetPoint{0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0};

}  // namespace

TEST_CASE("simplex point construction") {
    SimplexPoint p({0.2, 0.3, 0.5});
    CHECK(p.dim() == 3);
    CHECK(p[2] == doctest::Approx(0.5));

    // renormalizes small drift
    SimplexPoint q({0.2 + 1e-13, 0.3, 0.5});
    double sum = 0;
    for (double c : q.coords()) sum += c;
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    CHECK_THROWS_AS(SimplexPoint({0.5, -0.5, 1.0}), error);
    CHECK_THROWS_AS(SimplexPoint({0.1, 0.1}), error);
    CHECK(SimplexPoint::uniform(4)[0] == doctest::Approx(0.25));
    auto face = SimplexPoint::uniform_on(4, {1, 3});
    CHECK(face[0] == 0.0);
    CHECK(face[1] == doctest::Approx(0.5));
}

TEST_CASE("edge sums") {
    Hypergraph tetra = builtin("tetrahedron");
    for (int e = 0; e < 4; ++e) {
        CHECK(edge_sum(SimplexPoint::uniform(4), tetra.edge(e)) == doctest::Approx(0.75));
    }
    Hypergraph cube = builtin("cube");
    for (int e = 0; e < 6; ++e) {
        CHECK(edge_sum(SimplexPoint::uniform(8), cube.edge(e)) == doctest::Approx(0.5));
        CHECK(edge_sum(kCubeCosetPoint, cube.edge(e)) == doctest::Approx(0.5));
    }
    Hypergraph path = builtin("path(3)");
    CHECK(edge_sum(std::vector<double>{0.5, 0.0, 0.5}, path.edge(0)) == doctest::Approx(0.5));
}

TEST_CASE("gradient values") {
    Hypergraph tetra = builtin("tetrahedron");
    for (double g : lyapunov_gradient(tetra, SimplexPoint::uniform(4))) {
        CHECK(g == doctest::Approx(0.0).epsilon(1e-14));
    }

    Hypergraph path = builtin("path(3)");
    auto grad = lyapunov_gradient(path, std::vector<double>{0.5, 0.0, 0.5});
    CHECK(grad[1] == doctest::Approx(1.0));
    CHECK(grad[0] == doctest::Approx(0.0));

    Hypergraph single = builtin("single_edge(4)");
    for (double g : lyapunov_gradient(single, std::vector<double>{0.4, 0.3, 0.2, 0.1})) {
        CHECK(g == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("lyapunov values") {
    CHECK(lyapunov(builtin("single_edge(3)"), SimplexPoint::uniform(3)) == doctest::Approx(-1.0));
    CHECK(lyapunov(builtin("tetrahedron"), SimplexPoint::uniform(4)) ==
          doctest::Approx(-1.0 + std::log(0.75)));
    CHECK(lyapunov(builtin("cube"), std::vector<double>(kCubeCosetPoint)) ==
          doctest::Approx(-1.0 + std::log(0.5)));
    CHECK_THROWS_AS(lyapunov(builtin("path(3)"), std::vector<double>{0.0, 0.0, 1.0}), error);
}

TEST_CASE("drift field") {
    Hypergraph single = builtin("single_edge(5)");
    for (double f : vector_field(single, std::vector<double>{0.3, 0.1, 0.2, 0.25, 0.15})) {
        CHECK(f == doctest::Approx(0.0).epsilon(1e-14));
    }
    TangentVector tetra_field = vector_field(builtin("tetrahedron"), SimplexPoint::uniform(4));
    for (double f : tetra_field.coords()) {
        CHECK(f == doctest::Approx(0.0).epsilon(1e-14));
    }
    for (double f : vector_field(builtin("cube"), std::vector<double>(kCubeCosetPoint))) {
        CHECK(f == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("hessian values") {
    Hypergraph cube = builtin("cube");
    auto count_shared = [&](int i, int j) {
        int c = 0;
        for (int e = 0; e < 6; ++e) {
            const auto& edge = cube.edge(e);
            bool has_i = std::find(edge.begin(), edge.end(), i) != edge.end();
            bool has_j = std::find(edge.begin(), edge.end(), j) != edge.end();
            if (has_i && has_j) ++c;
        }
        return c;
    };
    auto hess = lyapunov_hessian(cube, std::vector<double>(kCubeCosetPoint));
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            CHECK(hess(i, j) == doctest::Approx(-2.0 / 3.0 * count_shared(i, j)));
        }
    }

    auto single = lyapunov_hessian(builtin("single_edge(3)"), SimplexPoint::uniform(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(single(i, j) == doctest::Approx(-1.0));
    }
    CHECK((hess - hess.transpose()).norm() == 0.0);
}

TEST_CASE("derivatives match finite differences on random hypergraphs") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Hypergraph h = random_hypergraph(rng);
        auto v = random_interior_point(rng, h.vertex_count());

        auto grad = lyapunov_gradient(h, v);
        auto fd_grad = polyurn::testing::fd_gradient(
            [&](const std::vector<double>& u) { return lyapunov(h, u); }, v);
        for (size_t i = 0; i < grad.size(); ++i) {
            CHECK(grad[i] == doctest::Approx(fd_grad[i]).epsilon(1e-5));
        }

        auto hess = lyapunov_hessian(h, v);
        auto fd_hess = polyurn::testing::fd_jacobian(
            [&](const std::vector<double>& u) { return lyapunov_gradient(h, u); }, v);
        CHECK((hess - fd_hess).cwiseAbs().maxCoeff() < 1e-4);

        auto jf = field_jacobian(h, v);
        auto fd_jf = polyurn::testing::fd_jacobian(
            [&](const std::vector<double>& u) { return vector_field(h, u); }, v);
        CHECK((jf - fd_jf).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("field properties on random interior points") {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph h = random_hypergraph(rng);
        SimplexPoint v(random_interior_point(rng, h.vertex_count()));

        auto f = vector_field(h, v).coords();
        double sum = 0;
        for (double c : f) sum += c;
        CHECK(std::abs(sum) < 1e-12);

        auto grad = lyapunov_gradient(h, v);
        for (size_t i = 0; i < f.size(); ++i) {
            CHECK(std::abs(f[i] - v[i] * grad[i]) < 1e-12);
        }

        // negative semidefiniteness of the hessian
        auto hess = lyapunov_hessian(h, v);
        for (int probe = 0; probe < 100; ++probe) {
            Eigen::VectorXd u(h.vertex_count());
            for (int i = 0; i < h.vertex_count(); ++i) u(i) = rng.uniform() - 0.5;
            CHECK(u.dot(hess * u) <= 1e-10);
        }
    }
}

TEST_CASE("flow integration") {
    Hypergraph single = builtin("single_edge(3)");
    auto constant = flow_integrate(single, SimplexPoint({0.5, 0.3, 0.2}),
                                   FlowDomain::half_margin(single), 10.0, 0.01);
    for (const auto& s : constant) {
        CHECK(s.point[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.point[2] == doctest::Approx(0.2).epsilon(1e-12));
    }

    // equilibria are fixed points of the flow
    Hypergraph cube = builtin("cube");
    auto fixed = flow_integrate(cube, SimplexPoint::uniform(8), FlowDomain::half_margin(cube),
                                2.0, 0.01);
    for (const auto& s : fixed) {
        for (int i = 0; i < 8; ++i) CHECK(s.point[i] == doctest::Approx(0.125).epsilon(1e-12));
    }

    Hypergraph tetra = builtin("tetrahedron");
    auto traj = flow_integrate(tetra, SimplexPoint({0.7, 0.1, 0.1, 0.1}),
                               FlowDomain::half_margin(tetra), 200.0, 0.01);
    const auto& last = traj.back();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(last.point[i] - 0.25) < 1e-6);
    for (size_t s = 1; s < traj.size(); ++s) {
        CHECK(traj[s].lyapunov_value >= traj[s - 1].lyapunov_value - 1e-9);
    }

    // starting outside the domain
    Hypergraph path = builtin("path(3)");
    CHECK_THROWS_AS(flow_integrate(path, SimplexPoint({0.01, 0.01, 0.98}),
                                   FlowDomain::with_cutoff(path, 0.2), 1.0, 0.01),
                    error);
}

TEST_CASE("inward pointing at the cutoff boundary") {
    Rng rng(31);
    int tested = 0;
    while (tested < 30) {
        Hypergraph h = random_hypergraph(rng);
        int edge_index = -1;
        for (int e = 0; e < h.edge_count(); ++e) {
            if (static_cast<int>(h.edge(e).size()) < h.vertex_count()) {
                edge_index = e;
                break;
            }
        }
        if (edge_index < 0) continue;
        const double c = 1.0 / (2.0 * h.edge_count());
        const auto& edge = h.edge(edge_index);

        // mass c spread over the edge, the rest outside
        std::vector<double> v(h.vertex_count(), 0.0);
        std::vector<double> inside(edge.size()), outside;
        double mass_in = 0;
        for (double& x : inside) {
            x = -std::log(1.0 - rng.uniform());
            mass_in += x;
        }
        for (size_t i = 0; i < edge.size(); ++i) v[edge[i]] = c * inside[i] / mass_in;
        double mass_out = 0;
        std::vector<int> off;
        for (int i = 0; i < h.vertex_count(); ++i) {
            if (v[i] == 0.0) off.push_back(i);
        }
        std::vector<double> weights(off.size());
        for (double& x : weights) {
            x = -std::log(1.0 - rng.uniform());
            mass_out += x;
        }
        for (size_t i = 0; i < off.size(); ++i) v[off[i]] = (1.0 - c) * weights[i] / mass_out;

        auto f = vector_field(h, v);
        double edge_drift = 0;
        for (int i : edge) edge_drift += f[i];
        CHECK(edge_drift >= 1.0 / h.edge_count() - c - 1e-12);
        ++tested;
    }
}
