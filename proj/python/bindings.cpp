#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regional/analysis.hpp"
#include "regional/config.hpp"
#include "regional/policies.hpp"
#include "regional/runner.hpp"

namespace py = pybind11;
using namespace regional;

namespace {

HolderConstants holder_from_dict(const py::dict& d) {
    HolderConstants h;
    h.d1 = d["d1"].cast<double>();
    h.gamma1 = d["gamma1"].cast<double>();
    h.d2 = d["d2"].cast<double>();
    h.gamma2 = d["gamma2"].cast<double>();
    return h;
}

py::dict summary_dict(const PolicyRun& run) {
    py::list t, cum_mean, cum_stderr, pu_mean, pu_stderr;
    for (const auto& p : run.summary) {
        t.append(p.t);
        cum_mean.append(p.cum_mean);
        cum_stderr.append(p.cum_stderr);
        pu_mean.append(p.per_unit_mean);
        pu_stderr.append(p.per_unit_stderr);
    }
    py::dict d;
    d["policy"] = run.policy;
    d["t"] = t;
    d["cum_mean"] = cum_mean;
    d["cum_stderr"] = cum_stderr;
    d["per_unit_mean"] = pu_mean;
    d["per_unit_stderr"] = pu_stderr;
    return d;
}

}  // namespace

PYBIND11_MODULE(_regional, m) {
    m.doc() = "Regional multi-armed bandit simulation core";

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi);

    py::class_<RewardFunction>(m, "RewardFunction")
        .def_static("affine",
                    [](double a, double c, const py::dict& h) {
                        return RewardFunction::affine(a, c, holder_from_dict(h));
                    })
        .def_static("power",
                    [](double a, double b, double c, const py::dict& h) {
                        return RewardFunction::power(a, b, c, holder_from_dict(h));
                    })
        .def_static("shifted_power",
                    [](double a, double b, double c, const py::dict& h) {
                        return RewardFunction::shifted_power(a, b, c, holder_from_dict(h));
                    })
        .def_static("sqrt_affine",
                    [](double a, double c, const py::dict& h) {
                        return RewardFunction::sqrt_affine(a, c, holder_from_dict(h));
                    })
        .def_static("pricing",
                    [](double p, const py::dict& h) {
                        return RewardFunction::pricing(p, holder_from_dict(h));
                    })
        .def("evaluate", &RewardFunction::evaluate)
        .def("invert", &RewardFunction::invert, py::arg("y"), py::arg("domain"));

    py::class_<Group>(m, "Group")
        .def_property_readonly("num_arms", &Group::num_arms)
        .def_readonly("d1", &Group::d1)
        .def_readonly("gamma1", &Group::gamma1)
        .def_readonly("d1_bar", &Group::d1_bar)
        .def_readonly("d2", &Group::d2)
        .def_readonly("gamma2", &Group::gamma2)
        .def_readonly("xi", &Group::xi);

    m.def("make_group", &make_group, py::arg("arms"), py::arg("domain"));
    m.def("envelope", &envelope, py::arg("group"), py::arg("theta"));
    m.def("padding", &padding, py::arg("group"), py::arg("alpha"), py::arg("t"), py::arg("n"));
    m.def("sw_padding", &sw_padding, py::arg("group"), py::arg("alpha"), py::arg("t"),
          py::arg("window"), py::arg("n_windowed"));
    m.def(
        "compute_regions",
        [](const Group& g, double grid_step) {
            const auto geo = compute_regions(g, grid_step);
            py::list arms;
            for (const auto& regions : geo.optimal_regions) {
                py::list ivs;
                for (const auto& iv : regions) ivs.append(py::make_tuple(iv.lo, iv.hi));
                arms.append(ivs);
            }
            return arms;
        },
        py::arg("group"), py::arg("grid_step") = 1e-4);
    m.def(
        "biased_distance",
        [](const Group& g, double theta, double grid_step) {
            return biased_distance(compute_regions(g, grid_step), theta);
        },
        py::arg("group"), py::arg("theta"), py::arg("grid_step") = 1e-4);
    m.def(
        "verify_holder",
        [](const RewardFunction& f, Interval domain, double grid_step) {
            const auto rep = verify_holder(f, domain, grid_step);
            py::dict d;
            d["pass"] = rep.pass;
            d["lower_ok"] = rep.lower_ok;
            d["upper_ok"] = rep.upper_ok;
            d["lower_worst"] = py::make_tuple(rep.lower_theta_a, rep.lower_theta_b, rep.lower_margin);
            d["upper_worst"] = py::make_tuple(rep.upper_theta_a, rep.upper_theta_b, rep.upper_margin);
            return d;
        },
        py::arg("function"), py::arg("domain"), py::arg("grid_step") = 1e-2);

    m.def("preset_names", &preset_names);
    m.def("preset_config", [](const std::string& name) { return serialize_config(preset(name)); });
    m.def("validate_config", [](const std::string& text) { return validate_config(parse_config(text)); });
    m.def("window_rule", [](double tau, const std::string& cfg_text) {
        return window_rule(tau, parse_config(cfg_text).instance.groups);
    });

    m.def(
        "run_experiment",
        [](const std::string& cfg_text, int threads) {
            const auto runs = run_experiment(parse_config(cfg_text), threads);
            py::list out;
            for (const auto& run : runs) out.append(summary_dict(run));
            return out;
        },
        py::arg("config_json"), py::arg("threads") = 0);
    m.def(
        "run_and_write",
        [](const std::string& cfg_text, int threads) {
            return run_and_write(parse_config(cfg_text), threads);
        },
        py::arg("config_json"), py::arg("threads") = 0);

    m.def("gaps", [](const std::string& cfg_text) { return gaps(parse_config(cfg_text).instance); });
    m.def(
        "regret_upper_bound",
        [](const std::string& cfg_text, double T) {
            const auto cfg = parse_config(cfg_text);
            PolicyConfig pc{"ucb-g"};
            for (const auto& p : cfg.policies)
                if (p.name == "ucb-g" || p.name == "sw-ucb-g") pc = p;
            const auto rep = regret_upper_bound(cfg.instance, effective_alphas(cfg, pc), T,
                                                cfg.grid_step);
            py::dict d;
            d["total"] = rep.total;
            d["group_term"] = rep.group_term;
            d["in_group_term"] = rep.in_group_term;
            d["optimal_group"] = rep.optimal_group;
            d["delta"] = rep.delta;
            d["alpha"] = rep.alpha;
            d["gaps"] = rep.gaps;
            return d;
        },
        py::arg("config_json"), py::arg("horizon"));
    m.def("worst_case_shape", &worst_case_shape, py::arg("num_groups"), py::arg("k_star"),
          py::arg("xi"), py::arg("xi_star"), py::arg("horizon"), py::arg("c1"), py::arg("c2"));
    m.def("regret_lower_bound", [](const std::string& cfg_text) {
        const auto rep = regret_lower_bound(parse_config(cfg_text).instance);
        return py::make_tuple(rep.log_coefficient, rep.additive_constant);
    });
    m.def(
        "confusing_period",
        [](const std::string& cfg_text, double delta, long T) {
            const auto cfg = parse_config(cfg_text);
            return confusing_period(cfg.instance, cfg.drift, delta, T);
        },
        py::arg("config_json"), py::arg("delta"), py::arg("horizon"));
}
