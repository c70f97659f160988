#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvrp/instance.hpp"
#include "cvrp/io.hpp"
#include "cvrp/oracle.hpp"
#include "cvrp/solver_comb.hpp"
#include "cvrp/solver_lp.hpp"
#include "cvrp/split.hpp"

namespace py = pybind11;
using namespace cvrp;

namespace {

py::list tours_to_list(const Solution& sol) {
    py::list tours;
    for (const auto& t : sol.tours) tours.append(t.clients);
    return tours;
}

Solution solution_from_list(const Instance& inst, const std::vector<std::vector<int>>& tours) {
    Solution sol;
    for (const auto& t : tours) sol.add(Tour::of(inst, t));
    return sol;
}

py::dict bounds_to_dict(const RadialBounds& rb) {
    py::dict d;
    d["delta"] = rb.delta.str();
    d["D"] = rb.d_total;
    d["D_small"] = rb.d_small;
    d["D_big"] = rb.d_big;
    d["D_prime_big"] = rb.d_prime_big;
    return d;
}

TspResult full_tsp(const Instance& inst, TspAlgo algo) {
    std::vector<int> nodes{0};
    for (int v = 1; v <= inst.num_clients(); ++v) nodes.push_back(v);
    return solve_tsp(algo, nodes, [&](int u, int v) { return inst.c(u, v); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Approximation algorithms for unsplittable CVRP";

    py::class_<Instance>(m, "Instance")
        .def_static("from_matrix", &Instance::from_matrix, py::arg("name"), py::arg("capacity"),
                    py::arg("demands"), py::arg("costs"))
        .def_readonly("name", &Instance::name)
        .def_readonly("capacity", &Instance::capacity)
        .def_property_readonly("n", &Instance::num_clients)
        .def("demand", [](const Instance& i, int v) { return i.demand.at(v); })
        .def("cost", [](const Instance& i, int u, int v) { return i.c(u, v); })
        .def("validate",
             [](const Instance& i) {
                 const auto rep = validate_instance(i);
                 std::vector<std::string> errors;
                 for (const auto& v : rep.violations)
                     if (v.hard) errors.push_back(v.what);
                 return errors;
             })
        .def("__repr__", [](const Instance& i) {
            return "<Instance " + i.name + " n=" + std::to_string(i.num_clients()) + ">";
        });

    m.def("parse_instance", &parse_instance, py::arg("text"), py::arg("rounded") = false);
    m.def("format_instance", &format_instance);
    m.def(
        "generate_instance",
        [](int n, std::int64_t capacity, std::uint64_t seed, const std::string& dist,
           std::int64_t box) {
            GeneratorConfig cfg;
            cfg.n = n;
            cfg.capacity = capacity;
            cfg.seed = seed;
            cfg.box = box;
            if (dist == "uniform")
                cfg.dist = DemandDist::uniform;
            else if (dist == "small-heavy")
                cfg.dist = DemandDist::small_heavy;
            else
                throw std::invalid_argument("unknown demand distribution: " + dist);
            return generate_instance(cfg);
        },
        py::arg("n"), py::arg("capacity"), py::arg("seed") = 1, py::arg("dist") = "uniform",
        py::arg("box") = 1000);

    m.def(
        "radial_bounds",
        [](const Instance& inst, const std::string& delta) {
            return bounds_to_dict(radial_bounds(inst, Delta::parse(delta)));
        },
        py::arg("instance"), py::arg("delta") = "1/3");

    m.def(
        "classify_clients",
        [](const Instance& inst, const std::string& delta) {
            const auto cls = classify_clients(inst, Delta::parse(delta));
            return py::make_tuple(cls.small, cls.big);
        },
        py::arg("instance"), py::arg("delta") = "1/3");

    m.def(
        "validate_solution",
        [](const Instance& inst, const std::vector<std::vector<int>>& tours) {
            const auto sol = solution_from_list(inst, tours);
            const auto rep = validate_solution(sol, inst);
            return rep.ok() ? std::string() : rep.first_error();
        },
        py::arg("instance"), py::arg("tours"));

    m.def(
        "solve_classic",
        [](const Instance& inst, const std::string& tsp) {
            const auto algo = tsp_algo_from_name(tsp);
            const auto sol = dp_split(full_tsp(inst, algo), inst);
            py::dict out;
            out["tours"] = tours_to_list(sol);
            out["cost"] = sol.total_cost;
            out["bounds"] = bounds_to_dict(radial_bounds(inst, Delta(0, 1)));
            return out;
        },
        py::arg("instance"), py::arg("tsp") = "christofides");

    m.def(
        "solve_combinatorial",
        [](const Instance& inst, const std::string& tsp) {
            const auto [sol, cert] = solve_combinatorial(inst, tsp_algo_from_name(tsp));
            py::dict out;
            out["tours"] = tours_to_list(sol);
            out["cost"] = sol.total_cost;
            out["matching_cost"] = cert.cost_m;
            out["cost_T"] = cert.cost_t;
            out["cost_F"] = cert.cost_f;
            out["ledger_ok"] = cert.ledger_ok;
            out["bounds"] = bounds_to_dict(cert.bounds);
            return out;
        },
        py::arg("instance"), py::arg("tsp") = "christofides");

    m.def(
        "solve_lp",
        [](const Instance& inst, const std::string& delta, const std::string& tsp,
           const std::string& mode, std::uint64_t seed) {
            const LpMode lp_mode = mode == "sampled" ? LpMode::sampled : LpMode::derandomized;
            const auto [sol, cert] =
                solve_lp_based(inst, Delta::parse(delta), tsp_algo_from_name(tsp), lp_mode, seed);
            py::dict out;
            out["tours"] = tours_to_list(sol);
            out["cost"] = sol.total_cost;
            out["lp_objective"] = cert.lp_objective;
            out["num_columns"] = cert.num_columns;
            out["phi_initial"] = cert.phi_initial;
            out["phi_final"] = cert.phi_final;
            out["bounds"] = bounds_to_dict(cert.bounds);
            return out;
        },
        py::arg("instance"), py::arg("delta") = "1/3", py::arg("tsp") = "christofides",
        py::arg("mode") = "derandomized", py::arg("seed") = 1);

    m.def(
        "exact_opt",
        [](const Instance& inst) {
            const auto res = exact_cvrp(inst);
            py::dict out;
            out["opt"] = res.opt_cost;
            out["tours"] = tours_to_list(res.opt_tours);
            return out;
        },
        py::arg("instance"));
}
