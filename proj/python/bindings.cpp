#include "cwqpt/cli.hpp"
#include "cwqpt/correspondence.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cwqpt;

namespace {

ModelSpec spec_of(const std::string& model, const std::string& j) {
    return model_spec(parse_model(model), Spin::parse(j));
}

py::dict fixed_point_dict(const FixedPoint& fp) {
    py::dict d;
    d["p"] = fp.x.p;
    d["q"] = fp.x.q;
    d["energy"] = fp.energy;
    d["kind"] = std::string(kind_name(fp.kind));
    d["on_boundary"] = fp.on_boundary;
    return d;
}

py::dict census_dict(const Census& c) {
    py::dict d;
    d["minima"] = c.minima;
    d["maxima"] = c.maxima;
    d["saddles"] = c.saddles;
    d["degenerate"] = c.degenerate;
    d["lower_pole"] = std::string(kind_name(c.lower_pole));
    d["upper_pole"] = std::string(kind_name(c.upper_pole));
    return d;
}

py::object optional_float(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curie-Weiss quantum phase transitions";

    m.def("models", [] {
        std::vector<std::string> out;
        for (ModelId id : all_models) out.emplace_back(model_token(id));
        return out;
    });

    m.def("lambda_of_g", [](const std::string& model, double g) { return lambda_of_g(spec_of(model, "1"), g); },
          py::arg("model"), py::arg("g"));

    m.def(
        "hamiltonian",
        [](const std::string& model, const std::string& j, double g) {
            return build_reduced_hamiltonian(spec_of(model, j), g).H;
        },
        py::arg("model"), py::arg("j"), py::arg("g"));

    m.def(
        "spectrum",
        [](const std::string& model, const std::string& j, double g) {
            return diagonalize(build_reduced_hamiltonian(spec_of(model, j), g), false).eigenvalues;
        },
        py::arg("model"), py::arg("j"), py::arg("g"));

    m.def(
        "ground_expectation",
        [](const std::string& model, const std::string& j, double g) {
            const GroundState gs = ground_expectation(spec_of(model, j), g);
            py::dict d;
            d["value"] = gs.value;
            d["energy"] = gs.energy;
            d["gap"] = gs.gap;
            d["degenerate"] = gs.degenerate;
            return d;
        },
        py::arg("model"), py::arg("j"), py::arg("g"));

    m.def(
        "esqpt_energy",
        [](const std::string& model, const std::string& j, double g, int window) -> py::object {
            const Spectrum s = diagonalize(build_reduced_hamiltonian(spec_of(model, j), g), false);
            const auto marker = esqpt_energy(s, window);
            if (!marker) return py::none();
            py::dict d;
            d["energy"] = marker->energy;
            d["gap_at_min"] = marker->gap_at_min;
            d["index"] = marker->index;
            d["mean_spacing"] = mean_level_spacing(s.eigenvalues);
            return d;
        },
        py::arg("model"), py::arg("j"), py::arg("g"), py::arg("window") = 2);

    m.def(
        "critical_g",
        [](const std::string& model, const std::string& j, double start, double stop, double step) {
            const CriticalEstimate e = critical_g(spec_of(model, j), uniform_grid(start, stop, step));
            py::dict d;
            d["g"] = e.g;
            d["peak"] = e.peak;
            d["converged"] = e.converged;
            return d;
        },
        py::arg("model"), py::arg("j"), py::arg("start"), py::arg("stop"), py::arg("step") = 0.01);

    m.def(
        "fixed_points",
        [](const std::string& model, double lambda) {
            py::list out;
            for (const FixedPoint& fp : find_fixed_points(classical_hamiltonian(parse_model(model)), lambda)) {
                out.append(fixed_point_dict(fp));
            }
            return out;
        },
        py::arg("model"), py::arg("lam"));

    m.def(
        "separatrix_energies",
        [](const std::string& model, double lambda) {
            return separatrix_energies(classical_hamiltonian(parse_model(model)), lambda);
        },
        py::arg("model"), py::arg("lam"));

    m.def(
        "bifurcation_scan",
        [](const std::string& model, double lo, double hi, int steps, double tolerance) {
            const BifurcationReport r = bifurcation_scan(classical_hamiltonian(parse_model(model)), lo, hi, steps, tolerance);
            py::list out;
            for (const CriticalLambda& c : r.critical) {
                py::dict d;
                d["lambda"] = c.lambda;
                d["bracket"] = py::make_tuple(c.bracket_low, c.bracket_high);
                d["mechanism"] = std::string(mechanism_name(c.mechanism));
                d["before"] = census_dict(c.before);
                d["after"] = census_dict(c.after);
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("tolerance") = 1e-3);

    m.def(
        "orbit",
        [](const std::string& model, double lambda, double p0, double q0, double t_end, double dt) {
            const Orbit o = integrate_orbit(classical_hamiltonian(parse_model(model)), lambda, {p0, q0}, t_end, dt);
            Eigen::MatrixX2d pts(static_cast<Eigen::Index>(o.points.size()), 2);
            for (std::size_t i = 0; i < o.points.size(); ++i) {
                pts(static_cast<Eigen::Index>(i), 0) = o.points[i].p;
                pts(static_cast<Eigen::Index>(i), 1) = o.points[i].q;
            }
            py::dict d;
            d["t"] = o.t;
            d["points"] = pts;
            d["hit_boundary"] = o.hit_boundary;
            return d;
        },
        py::arg("model"), py::arg("lam"), py::arg("p0"), py::arg("q0"), py::arg("t_end"), py::arg("dt") = 1e-3);

    m.def(
        "portrait",
        [](const std::string& model, double lambda, int grid, const std::vector<double>& energies) {
            const PhasePortrait pp = portrait(classical_hamiltonian(parse_model(model)), lambda, grid, energies);
            py::list out;
            for (const Polyline& line : pp.orbits) {
                Eigen::MatrixX2d pts(static_cast<Eigen::Index>(line.points.size()), 2);
                for (std::size_t i = 0; i < line.points.size(); ++i) {
                    pts(static_cast<Eigen::Index>(i), 0) = line.points[i].p;
                    pts(static_cast<Eigen::Index>(i), 1) = line.points[i].q;
                }
                py::dict d;
                d["energy"] = line.energy;
                d["points"] = pts;
                d["closed"] = line.closed;
                d["winding"] = line.winding;
                d["separatrix"] = line.separatrix;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("lam"), py::arg("grid") = 400, py::arg("energies") = std::vector<double>{});

    m.def(
        "ground_energy_match",
        [](const std::string& model, double g, const std::vector<std::string>& js) {
            std::vector<Spin> spins;
            for (const std::string& j : js) spins.push_back(Spin::parse(j));
            const CorrespondenceReport r = ground_energy_match(parse_model(model), g, spins);
            py::dict d;
            d["lambda"] = r.lambda;
            d["classical_ground"] = r.classical_ground;
            py::list table;
            for (const ConvergenceRow& row : r.table) {
                table.append(py::make_tuple(row.j.token(), row.scaled_ground, row.deviation));
            }
            d["table"] = table;
            return d;
        },
        py::arg("model"), py::arg("g"), py::arg("j_list"));

    m.def(
        "critical_match",
        [](const std::string& model, const std::string& j) {
            const CriticalMatch c = critical_match(parse_model(model), Spin::parse(j));
            py::dict d;
            d["g_star"] = c.quantum.g;
            d["mapped_lambda"] = c.mapped_lambda;
            d["lambda_c"] = optional_float(c.lambda_c);
            d["difference"] = optional_float(c.difference);
            d["note"] = c.note;
            return d;
        },
        py::arg("model"), py::arg("j") = "100");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
