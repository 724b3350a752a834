#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "lstmcs/config.hpp"
#include "lstmcs/experiments.hpp"
#include "lstmcs/model_io.hpp"
#include "lstmcs/signal.hpp"
#include "lstmcs/solvers.hpp"

namespace py = pybind11;
using namespace lstmcs;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw py::value_error("expected a 2-d array");
    Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    std::copy(arr.data(), arr.data() + m.size(), m.data());
    return m;
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    std::copy(m.data(), m.data() + m.size(), arr.mutable_data());
    return arr;
}

SolverConfig make_solver_config(std::size_t k_max, double res_min, bool shared_support) {
    SolverConfig cfg;
    cfg.k_max = k_max;
    cfg.res_min = res_min;
    cfg.shared_support = shared_support;
    return cfg;
}

py::dict result_to_dict(const SolverResult& res) {
    py::dict out;
    out["shat"] = to_array(res.shat);
    out["supports"] = res.supports;
    out["residual_norms"] = res.residual_norms;
    out["iterations"] = res.iterations;
    out["wall_seconds"] = res.wall_seconds;
    return out;
}

}  // namespace

PYBIND11_MODULE(_lstmcs, mod) {
    mod.doc() = "LSTM-guided distributed compressive sensing core";

    mod.def(
        "gen_measurement_ensemble",
        [](std::size_t m, std::size_t n, std::uint64_t seed) {
            return to_array(gen_measurement_ensemble(m, n, seed).a);
        },
        py::arg("m"), py::arg("n"), py::arg("seed"));

    mod.def(
        "gen_sparse_ensemble",
        [](std::size_t n, std::size_t l, std::size_t k, const std::string& pattern,
           const std::string& amplitude, std::uint64_t seed) {
            return to_array(gen_sparse_ensemble(n, l, k, parse_pattern(pattern),
                                                parse_amplitude_law(amplitude), seed)
                                .s);
        },
        py::arg("n"), py::arg("l"), py::arg("k"), py::arg("pattern") = "joint",
        py::arg("amplitude") = "uniform_signed", py::arg("seed") = 1);

    mod.def(
        "measure",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& s, double sigma,
           std::uint64_t noise_seed) {
            MeasurementEnsemble ens;
            ens.a = to_matrix(a);
            NoiseSpec noise;
            noise.sigma = sigma;
            noise.seed = noise_seed;
            return to_array(measure(ens, to_matrix(s), noise));
        },
        py::arg("a"), py::arg("s"), py::arg("sigma") = 0.0, py::arg("noise_seed") = 0);

    mod.def(
        "nmse",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& s_true,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& s_hat) {
            return nmse(to_matrix(s_true), to_matrix(s_hat));
        },
        py::arg("s_true"), py::arg("s_hat"));

    mod.def(
        "omp_solve",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y, std::size_t k_max,
           double res_min) {
            return result_to_dict(omp_solve_mmv(to_matrix(a), to_matrix(y),
                                                make_solver_config(k_max, res_min, false)));
        },
        py::arg("a"), py::arg("y"), py::arg("k_max"), py::arg("res_min") = 1e-9);

    mod.def(
        "somp_solve",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y, std::size_t k_max,
           double res_min) {
            return result_to_dict(somp_solve(to_matrix(a), to_matrix(y),
                                             make_solver_config(k_max, res_min, false)));
        },
        py::arg("a"), py::arg("y"), py::arg("k_max"), py::arg("res_min") = 1e-9);

    mod.def(
        "lstm_solve",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           const std::string& model_path, std::size_t k_max, double res_min, bool shared_support) {
            const LstmParams model = load_model(model_path);
            return result_to_dict(lstm_cs_solve(to_matrix(a), to_matrix(y), model,
                                                make_solver_config(k_max, res_min, shared_support)));
        },
        py::arg("a"), py::arg("y"), py::arg("model_path"), py::arg("k_max"),
        py::arg("res_min") = 1e-9, py::arg("shared_support") = false);

    mod.def(
        "run_command",
        [](const std::string& command, const std::string& config_text,
           const std::vector<std::string>& overrides) {
            ExperimentConfig cfg = parse_config_text(config_text);
            for (const auto& assignment : overrides) apply_override(cfg, assignment);
            RunReport report;
            if (command == "train")
                report = run_train(cfg);
            else if (command == "solve")
                report = run_solve(cfg);
            else if (command == "timing")
                report = run_timing(cfg);
            else if (command == "gen-data")
                report = run_gen_data(cfg);
            else if (command.rfind("sweep:", 0) == 0)
                report = run_sweep(cfg, parse_sweep_axis(command.substr(6)));
            else
                throw py::value_error("unknown command '" + command + "'");
            py::dict out;
            out["written"] = report.written;
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict r;
                r["experiment"] = row.experiment;
                r["solver"] = row.solver;
                r["k"] = row.k;
                r["m_over_n"] = row.m_over_n;
                r["sigma"] = row.sigma;
                r["trial"] = row.trial;
                r["nmse"] = row.nmse;
                r["recovered"] = row.recovered;
                r["wall_time_s"] = row.wall_time_s;
                rows.append(r);
            }
            out["rows"] = rows;
            out["best_epoch"] = report.best_epoch;
            return out;
        },
        py::arg("command"), py::arg("config_text") = "", py::arg("overrides") = std::vector<std::string>{});

    mod.def("default_config", [] { return emit_config(ExperimentConfig{}); });
}
