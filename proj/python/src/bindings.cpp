#include "langevin/bounds.hpp"
#include "langevin/config.hpp"
#include "langevin/errors.hpp"
#include "langevin/metrics.hpp"
#include "langevin/mollifier.hpp"
#include "langevin/planner.hpp"
#include "langevin/samplers.hpp"
#include "langevin/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace langevin;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SampleSet to_samples(const Array& a) {
    if (a.ndim() == 1) return SampleSet(1, std::vector<double>(a.data(), a.data() + a.size()));
    if (a.ndim() != 2) throw InputError("samples must be a 1-D or 2-D array");
    return SampleSet(static_cast<int>(a.shape(1)), std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict plan_dict(const Plan& p, const PlanRequest& req) {
    py::dict d;
    d["algorithm"] = p.algorithm;
    d["branch"] = p.branch;
    d["k"] = static_cast<double>(p.k);
    d["log10_k"] = static_cast<double>(p.log10_k());
    d["eta"] = static_cast<double>(p.eta);
    d["eta_capped"] = p.eta_capped;
    d["astronomical"] = p.astronomical;
    if (p.r) d["r"] = static_cast<double>(*p.r);
    if (p.n_batch) d["n_batch"] = static_cast<double>(*p.n_batch);
    auto rep = verify_plan(p, req);
    d["verified"] = rep.ok;
    d["envelope"] = static_cast<double>(rep.total);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.def("builtin_potentials", &builtin_names);

    m.def(
        "mollifier_sample",
        [](int dim, std::size_t n, std::uint64_t seed, double radius) {
            Mollifier k(dim, radius);
            Engine rng(seed);
            Array out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(dim)});
            double* p = out.mutable_data();
            for (std::size_t i = 0; i < n; ++i) k.sample(rng, std::span<double>(p + i * dim, dim));
            return out;
        },
        py::arg("dim"), py::arg("n"), py::arg("seed") = 0, py::arg("radius") = 1.0);

    m.def("mollifier_density", [](int dim, double radius, const Array& x) {
        Mollifier k(dim, radius);
        if (x.size() != dim) throw InputError("point dimension mismatch");
        return k.density(std::span<const double>(x.data(), dim));
    });

    m.def(
        "run_config",
        [](const std::string& config_json, std::size_t threads) {
            auto c = parse_config(nlohmann::json::parse(config_json));
            std::vector<Trace> traces;
            {
                py::gil_scoped_release release;
                traces = run_replicas(build_oracle(c), build_chain(c), c.replicas, threads);
            }
            py::list out;
            for (const auto& t : traces) {
                Array pts({static_cast<py::ssize_t>(t.size()), static_cast<py::ssize_t>(t.dim)});
                std::copy(t.data.begin(), t.data.end(), pts.mutable_data());
                py::dict d;
                d["steps"] = t.steps;
                d["points"] = pts;
                d["diverged"] = t.diverged;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json"), py::arg("threads") = 1);

    m.def("config_hash", [](const std::string& config_json) {
        return hex64(config_hash(parse_config(nlohmann::json::parse(config_json))));
    });

    m.def(
        "plan",
        [](const std::string& algorithm, double epsilon, int d, double alpha, double c_const) {
            PlanRequest req;
            req.epsilon = epsilon;
            req.d = d;
            req.alpha = alpha;
            req.c_const = c_const;
            if (algorithm == "lmc") return plan_dict(plan_lmc(req), req);
            if (algorithm == "ss_sg_lmc") return plan_dict(plan_ss_sg_lmc(req), req);
            throw InputError("unknown plan algorithm: " + algorithm);
        },
        py::arg("algorithm") = "lmc", py::arg("epsilon") = 1.0, py::arg("d") = 1, py::arg("alpha") = 1.0,
        py::arg("C") = 1.0);

    m.def("w2_exact", [](const Array& a, const Array& b) { return w2_exact(to_samples(a), to_samples(b)); });
    m.def("w2_1d", [](const Array& a, const Array& b) { return w2_1d(to_samples(a), to_samples(b)); });

    m.def("verify_suite", [](const std::string& name, std::uint64_t seed) { return run_suite(name, seed).dump(); },
          py::arg("name"), py::arg("seed") = 1);
    m.def("suite_names", &suite_names);
}
