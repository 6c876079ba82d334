#include "deepesn/deepesn.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

namespace py = pybind11;
using namespace deepesn;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseMatrix to_matrix(const Array& a)
{
    if (a.ndim() == 1) return DenseMatrix(1, std::size_t(a.shape(0)), std::vector<double>(a.data(), a.data() + a.size()));
    if (a.ndim() != 2) throw DimensionError("expected a 1-D or 2-D array");
    return DenseMatrix(std::size_t(a.shape(0)), std::size_t(a.shape(1)),
                       std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const DenseMatrix& m)
{
    Array out({m.rows(), m.cols()});
    std::memcpy(out.mutable_data(), m.values().data(), m.values().size() * sizeof(double));
    return out;
}

Array to_array(const std::vector<double>& v)
{
    Array out(v.size());
    std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
    return out;
}

// States arrive as (units, time); the whole array is the kept window.
LayerStates to_states(const Array& a, std::size_t layer = 1)
{
    auto m = to_matrix(a);
    const std::size_t t = m.cols();
    return LayerStates(layer, std::move(m), 0, t);
}

std::vector<Array> run_layers(const DeepReservoir& res, const Array& inputs, std::size_t washout)
{
    std::vector<LayerStates> layers;
    if (inputs.ndim() == 1) {
        layers = run(res, std::span<const double>(inputs.data(), std::size_t(inputs.size())), washout);
    } else {
        // (time, input_dim) rows
        const auto m = to_matrix(inputs);
        std::vector<DenseVector> u;
        u.reserve(m.rows());
        for (std::size_t t = 0; t < m.rows(); ++t)
            u.emplace_back(std::vector<double>(m.row(t).begin(), m.row(t).end()));
        layers = run(res, u, washout);
    }
    std::vector<Array> out;
    for (const auto& l : layers) out.push_back(to_array(l.states()));
    return out;
}

py::list records_to_list(const ResultTable& t)
{
    py::list out;
    for (const auto& r : t.rows) {
        py::dict d;
        d["task"] = r.task;
        d["omega_il"] = r.omega_il;
        d["layer"] = r.layer;
        d["metric"] = r.metric;
        d["mean"] = r.mean;
        d["std"] = r.std;
        d["n"] = r.n;
        d["flags"] = r.flags;
        out.append(d);
    }
    return out;
}

ExperimentConfig config_from(const py::dict& overrides)
{
    ExperimentConfig cfg;
    if (!overrides.empty()) {
        const auto json = py::module_::import("json").attr("dumps")(overrides).cast<std::string>();
        apply_config_json(json, cfg);
    }
    return cfg;
}

} // namespace

PYBIND11_MODULE(_deepesn, m)
{
    m.doc() = "Deep echo state network reservoirs and richness measures";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
    py::register_exception<DegenerateSystemError>(m, "DegenerateSystemError", base.ptr());
    py::register_exception<IllConditionedError>(m, "IllConditionedError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());

    m.def("spectral_radius", [](const Array& a) { return spectral_radius(to_matrix(a)); }, py::arg("a"));
    m.def("operator_norm_2", [](const Array& a) { return operator_norm_2(to_matrix(a)); }, py::arg("a"));
    m.def("singular_values", [](const Array& a) { return to_array(singular_values(to_matrix(a)).values()); },
          py::arg("x"));

    py::class_<ReservoirConfig>(m, "ReservoirConfig")
        .def(py::init<>())
        .def_readwrite("n_layers", &ReservoirConfig::n_layers)
        .def_readwrite("units", &ReservoirConfig::units)
        .def_readwrite("input_dim", &ReservoirConfig::input_dim)
        .def_readwrite("spectral_radius", &ReservoirConfig::spectral_radius)
        .def_readwrite("input_scaling", &ReservoirConfig::input_scaling)
        .def_readwrite("interlayer_scaling", &ReservoirConfig::interlayer_scaling)
        .def_readwrite("seed", &ReservoirConfig::seed);

    py::class_<DeepReservoir>(m, "DeepReservoir")
        .def_property_readonly("n_layers", &DeepReservoir::n_layers)
        .def_property_readonly("units", &DeepReservoir::units)
        .def_property_readonly("input_dim", &DeepReservoir::input_dim)
        .def_property_readonly("w_in", [](const DeepReservoir& r) { return to_array(r.w_in()); })
        .def_property_readonly("w_inter",
                               [](const DeepReservoir& r) {
                                   std::vector<Array> out;
                                   for (const auto& w : r.w_inter()) out.push_back(to_array(w));
                                   return out;
                               })
        .def_property_readonly("w_rec",
                               [](const DeepReservoir& r) {
                                   std::vector<Array> out;
                                   for (const auto& w : r.w_rec()) out.push_back(to_array(w));
                                   return out;
                               })
        .def("run", &run_layers, py::arg("inputs"), py::arg("washout") = 0,
             "States per layer as (units, kept) arrays. inputs: 1-D series or (time, input_dim).");

    m.def(
        "init_reservoir",
        [](std::size_t n_layers, std::size_t units, std::size_t input_dim, double spectral_radius_,
           double input_scaling, double interlayer_scaling, std::uint64_t seed) {
            ReservoirConfig c{n_layers, units, input_dim, spectral_radius_, input_scaling, interlayer_scaling, seed};
            return init_reservoir(c);
        },
        py::arg("n_layers") = 1, py::arg("units") = 100, py::arg("input_dim") = 1, py::arg("spectral_radius") = 0.9,
        py::arg("input_scaling") = 1.0, py::arg("interlayer_scaling") = 1.0, py::arg("seed") = 0);
    m.def("init_reservoir_from_config", &init_reservoir, py::arg("config"));

    m.def("instantaneous_entropy",
          [](const Array& x, double shrink) {
              return instantaneous_entropy(std::span<const double>(x.data(), std::size_t(x.size())),
                                           EntropyParams{shrink});
          },
          py::arg("x"), py::arg("shrink_factor") = 0.3);
    m.def("average_state_entropy", [](const Array& s) { return average_state_entropy(to_states(s)); },
          py::arg("states"));
    m.def("uncoupled_dynamics",
          [](const Array& s, double explained, bool centered) {
              return uncoupled_dynamics(to_states(s), UdOptions{explained, centered});
          },
          py::arg("states"), py::arg("explained") = 0.9, py::arg("centered") = false);
    m.def("condition_number", [](const Array& s) { return condition_number(to_states(s)).kappa; },
          py::arg("states"));

    m.def(
        "train_direct",
        [](const Array& s, const Array& y, double ridge) { return to_array(train_direct(to_states(s), to_matrix(y), ridge).weights); },
        py::arg("states"), py::arg("targets"), py::arg("ridge") = 0.0);
    m.def(
        "train_lms",
        [](const Array& s, const Array& y, double eta, std::size_t epochs) {
            auto r = train_lms(to_states(s), to_matrix(y), LmsParams{eta, epochs});
            return py::make_tuple(to_array(r.readout.weights), to_array(r.trace.per_epoch_mse));
        },
        py::arg("states"), py::arg("targets"), py::arg("learning_rate") = 0.01, py::arg("epochs") = 5000,
        "Returns (weights, per-epoch MSE).");
    m.def(
        "predict",
        [](const Array& w, const Array& s) {
            return to_array(predict(Readout{to_matrix(w), 1, ReadoutMethod::direct, false}, to_states(s)));
        },
        py::arg("weights"), py::arg("states"));

    m.def(
        "generate_narma10",
        [](std::size_t length, std::uint64_t seed) {
            auto t = generate_narma10(length, seed);
            return py::make_tuple(to_array(t.inputs), to_array(t.targets));
        },
        py::arg("length"), py::arg("seed"), "Returns (inputs, targets).");
    m.def("load_laser", [](const std::filesystem::path& p, double scale) { return to_array(load_laser(p, scale)); },
          py::arg("path"), py::arg("scale") = 0.01);

    m.def(
        "richness_sweep", [](const py::dict& overrides) { return records_to_list(run_richness_sweep(config_from(overrides))); },
        py::arg("config") = py::dict(),
        "Aggregated ASE / UD / log10 kappa rows. config keys are the CLI flag names, e.g. {'layers': 3}.");
    m.def(
        "prediction_sweep",
        [](const py::dict& overrides) { return records_to_list(run_prediction_sweep(config_from(overrides))); },
        py::arg("config") = py::dict(), "Aggregated test MSE rows for the LMS and direct readouts.");
}
