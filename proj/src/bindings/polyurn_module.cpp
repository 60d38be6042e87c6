#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyurn/dynamics.hpp"
#include "polyurn/equilibria.hpp"
#include "polyurn/errors.hpp"
#include "polyurn/exactlin.hpp"
#include "polyurn/hypergraph.hpp"
#include "polyurn/simulate.hpp"
#include "polyurn/spectral.hpp"

namespace py = pybind11;
using namespace polyurn;

namespace {

std::vector<std::vector<std::string>> kernel_basis_strings(const KernelBasis& k) {
    std::vector<std::vector<std::string>> out;
    for (const auto& vec : k.basis) {
        std::vector<std::string> row;
        for (const auto& q : vec) row.push_back(q.to_string());
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_polyurn, m) {
    m.doc() = "Polya urns on finite hypergraphs: mean-field analysis and exact simulation";

    py::register_exception<error>(m, "PolyurnError");

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init<int, std::vector<std::vector<int>>>(), py::arg("m"), py::arg("edges"))
        .def_property_readonly("m", &Hypergraph::vertex_count)
        .def_property_readonly("edge_count", &Hypergraph::edge_count)
        .def_property_readonly("edges", &Hypergraph::edges)
        .def("star", &Hypergraph::star, py::arg("vertex"))
        .def("__repr__", [](const Hypergraph& h) {
            return "<Hypergraph m=" + std::to_string(h.vertex_count()) +
                   " edges=" + std::to_string(h.edge_count()) + ">";
        });

    m.def("builtin", &builtin, py::arg("name"));
    m.def("parse", &parse_hypergraph, py::arg("json_text"));
    m.def("serialize", &serialize, py::arg("hypergraph"));
    m.def("incidence", [](const Hypergraph& h) {
        auto inc = incidence(h);
        std::vector<std::vector<int>> rows(inc.rows, std::vector<int>(inc.cols));
        for (int e = 0; e < inc.rows; ++e) {
            for (int v = 0; v < inc.cols; ++v) rows[e][v] = inc.at(e, v);
        }
        return rows;
    });

    m.def("incidence_rank", [](const Hypergraph& h) { return rank(incidence_rational(h)); });
    m.def("tangent_kernel_dim", [](const Hypergraph& h) { return tangent_kernel(h).dim(); });
    m.def("full_kernel_dim", [](const Hypergraph& h) { return full_kernel(h).dim(); });
    m.def("tangent_kernel_basis",
          [](const Hypergraph& h) { return kernel_basis_strings(tangent_kernel(h)); });
    m.def("tangent_kernel_basis_float",
          [](const Hypergraph& h) { return basis_as_doubles(tangent_kernel(h)); });

    m.def("lyapunov",
          [](const Hypergraph& h, const std::vector<double>& v) { return lyapunov(h, v); },
          py::arg("hypergraph"), py::arg("v"));
    m.def("lyapunov_gradient",
          [](const Hypergraph& h, const std::vector<double>& v) {
              return lyapunov_gradient(h, v);
          },
          py::arg("hypergraph"), py::arg("v"));
    m.def("lyapunov_hessian",
          [](const Hypergraph& h, const std::vector<double>& v) {
              return lyapunov_hessian(h, v);
          },
          py::arg("hypergraph"), py::arg("v"));
    m.def("vector_field",
          [](const Hypergraph& h, const std::vector<double>& v) { return vector_field(h, v); },
          py::arg("hypergraph"), py::arg("v"));
    m.def("field_jacobian",
          [](const Hypergraph& h, const std::vector<double>& v) {
              return field_jacobian(h, v);
          },
          py::arg("hypergraph"), py::arg("v"));

    m.def(
        "flow_integrate",
        [](const Hypergraph& h, const std::vector<double>& start, double t_final, double dt,
           double cutoff) {
            FlowDomain domain =
                cutoff > 0 ? FlowDomain::with_cutoff(h, cutoff) : FlowDomain::half_margin(h);
            auto trajectory = flow_integrate(h, SimplexPoint(start), domain, t_final, dt);
            std::vector<double> times;
            std::vector<std::vector<double>> points;
            std::vector<double> values;
            for (const auto& s : trajectory) {
                times.push_back(s.t);
                points.push_back(s.point.coords());
                values.push_back(s.lyapunov_value);
            }
            return py::make_tuple(times, points, values);
        },
        py::arg("hypergraph"), py::arg("start"), py::arg("t_final"), py::arg("dt") = 0.01,
        py::arg("cutoff") = 0.0,
        "Returns (times, points, lyapunov_values) of the RK4 trajectory.");

    py::class_<EquilibriumRecord>(m, "EquilibriumRecord")
        .def_property_readonly("point",
                               [](const EquilibriumRecord& r) { return r.point.coords(); })
        .def_property_readonly("support",
                               [](const EquilibriumRecord& r) { return r.support.members; })
        .def_readonly("gradient", &EquilibriumRecord::gradient)
        .def_readonly("residual", &EquilibriumRecord::residual)
        .def_readonly("converged", &EquilibriumRecord::converged)
        .def_readonly("iterations", &EquilibriumRecord::iterations)
        .def_property_readonly("classification",
                               [](const EquilibriumRecord& r) {
                                   return r.classification == Stability::unstable
                                              ? "unstable"
                                              : "non_unstable";
                               })
        .def_property_readonly("witness", [](const EquilibriumRecord& r) -> py::object {
            if (r.witness) return py::int_(*r.witness);
            return py::none();
        });

    m.def(
        "find_equilibrium",
        [](const Hypergraph& h, const std::vector<int>& support,
           const std::optional<std::vector<double>>& start, double tol, long max_iter) {
            SolverOptions opts;
            opts.tolerance = tol;
            opts.max_iterations = max_iter;
            std::optional<SimplexPoint> start_point;
            if (start) start_point = SimplexPoint(*start);
            Support face =
                support.empty() ? Support::full(h.vertex_count()) : Support::of(support);
            return find_equilibrium(h, face, start_point, opts);
        },
        py::arg("hypergraph"), py::arg("support") = std::vector<int>{},
        py::arg("start") = std::nullopt, py::arg("tol") = 1e-12,
        py::arg("max_iter") = 1000000L);

    m.def("detect_pendants", [](const Hypergraph& h) {
        std::vector<std::tuple<int, int, int>> out;
        for (const auto& t : detect_pendants(h)) out.emplace_back(t.edge, t.pendant, t.shared);
        return out;
    });

    m.def(
        "limit_candidates",
        [](const Hypergraph& h) {
            auto set = limit_candidates(h);
            py::dict d;
            d["boundary_only"] = set.boundary_only;
            d["kernel_dim"] = set.kernel.dim();
            d["kernel_basis"] = kernel_basis_strings(set.kernel);
            if (set.base) {
                d["base_point"] = set.base->point.coords();
                d["base_converged"] = set.base->converged;
            }
            return d;
        },
        py::arg("hypergraph"));

    py::class_<SpectrumReport>(m, "SpectrumReport")
        .def_readonly("eigenvalues", &SpectrumReport::eigenvalues)
        .def_readonly("n_negative", &SpectrumReport::n_negative)
        .def_readonly("n_zero", &SpectrumReport::n_zero)
        .def_readonly("n_positive", &SpectrumReport::n_positive)
        .def_readonly("k_expected", &SpectrumReport::k_expected)
        .def_readonly("rank_jf", &SpectrumReport::rank_jf)
        .def_readonly("rank_incidence", &SpectrumReport::rank_incidence)
        .def_readonly("zero_threshold", &SpectrumReport::zero_threshold);

    m.def(
        "restricted_spectrum",
        [](const Hypergraph& h, const std::vector<double>& point, bool interior) {
            return restricted_spectrum(h, SimplexPoint(point), interior);
        },
        py::arg("hypergraph"), py::arg("point"), py::arg("interior") = true);

    m.def(
        "rank_identities",
        [](const Hypergraph& h, const std::vector<double>& point) {
            auto report = rank_identities(h, SimplexPoint(point));
            py::dict d;
            d["factorization_error"] = report.factorization_error;
            d["rank_jf"] = report.rank_jf;
            d["rank_incidence"] = report.rank_incidence;
            d["ranks_match"] = report.ranks_match;
            return d;
        },
        py::arg("hypergraph"), py::arg("point"));

    m.def("step_size", &step_size, py::arg("n"), py::arg("initial_total"), py::arg("edge_count"));

    m.def(
        "run_replicas",
        [](const Hypergraph& h, std::uint64_t seed, int replicas, std::uint64_t steps,
           const std::vector<std::uint64_t>& balls, std::uint64_t sample_stride) {
            SimConfig config;
            config.seed = seed;
            config.replicas = replicas;
            config.steps = steps;
            config.initial_balls = balls;
            config.schedule = sample_stride > 0 ? SampleSchedule::linear(sample_stride)
                                                : SampleSchedule::geometric();
            auto results = run(h, config);
            py::list out;
            for (const auto& r : results) {
                py::dict d;
                d["replica"] = r.replica;
                d["terminal"] = r.terminal;
                py::list samples;
                for (const auto& s : r.samples) {
                    samples.append(py::make_tuple(s.n, s.x));
                }
                d["samples"] = samples;
                out.append(d);
            }
            return out;
        },
        py::arg("hypergraph"), py::arg("seed") = 0, py::arg("replicas") = 1,
        py::arg("steps") = 10000, py::arg("balls") = std::vector<std::uint64_t>{},
        py::arg("sample_stride") = 0,
        "Exact urn simulation; sample_stride 0 selects the geometric schedule.");

    m.attr("__version__") = "0.1.0";
}
