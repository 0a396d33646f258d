#include "sboxforge/chaos.hpp"
#include "sboxforge/generator.hpp"
#include "sboxforge/io.hpp"
#include "sboxforge/metrics.hpp"
#include "sboxforge/reference.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace sboxforge;

namespace {

std::vector<std::uint8_t> to_octets(const std::vector<int>& values) {
    std::vector<std::uint8_t> out;
    out.reserve(values.size());
    for (int v : values) {
        if (v < 0 || v > 255) {
            throw py::value_error("table entries must be octets");
        }
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

RawTable to_table(const std::vector<int>& values) {
    if (values.size() != kTableSize) {
        throw py::value_error("S-box tables have exactly 256 entries");
    }
    const auto octets = to_octets(values);
    Octets a{};
    std::copy(octets.begin(), octets.end(), a.begin());
    return RawTable(a);
}

std::vector<int> to_list(const RawTable& t) { return {t.values().begin(), t.values().end()}; }

py::dict lyapunov_dict(const chaos::LyapunovEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["iterations"] = e.iterations;
    d["accumulated"] = e.accumulated;
    d["method"] = "two_trajectory";
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Trigonometric chaotic-map S-box generator and S-box metrics";

    py::register_exception<gen::GenerationStalled>(m, "GenerationStalled", PyExc_RuntimeError);
    py::register_exception<gen::RefinementFailed>(m, "RefinementFailed", PyExc_RuntimeError);
    py::register_exception<io::MalformedInput>(m, "MalformedInput", PyExc_ValueError);

    py::enum_<chaos::MapMode>(m, "MapMode")
        .value("EQ1", chaos::MapMode::Eq1)
        .value("ALG1", chaos::MapMode::Alg1);

    py::class_<chaos::MapParams>(m, "MapParams")
        .def(py::init<double, double, double, chaos::MapMode>(), py::arg("x0"), py::arg("a"), py::arg("b"),
             py::arg("mode") = chaos::MapMode::Alg1)
        .def_property_readonly("x0", &chaos::MapParams::x0)
        .def_property_readonly("a", &chaos::MapParams::a)
        .def_property_readonly("b", &chaos::MapParams::b)
        .def_property_readonly("mode", &chaos::MapParams::mode)
        .def("__repr__", [](const chaos::MapParams& p) {
            return "MapParams(x0=" + std::to_string(p.x0()) + ", a=" + std::to_string(p.a()) +
                   ", b=" + std::to_string(p.b()) + ", mode=" + std::string(chaos::to_string(p.mode())) + ")";
        });

    // trig_chaos
    m.def("step", [](double x, const chaos::MapParams& p) { return chaos::step(chaos::ChaosState(x), p).x(); },
          py::arg("x"), py::arg("params"));
    m.def("intermediates", [](double x, const chaos::MapParams& p) {
            const auto i = chaos::intermediates(chaos::ChaosState(x), p);
            return py::make_tuple(i.w, i.y);
        }, py::arg("x"), py::arg("params"));
    m.def("trajectory", &chaos::trajectory, py::arg("params"), py::arg("n"), py::arg("transient") = 0);
    m.def("bifurcation_scan",
          [](double a_min, double a_max, std::size_t a_steps, double x0, std::size_t samples, std::size_t transient,
             chaos::MapMode mode) {
              const auto records = chaos::bifurcation_scan({a_min, a_max, a_steps, x0, samples, transient, mode});
              std::vector<std::pair<double, double>> out;
              out.reserve(records.size());
              for (const auto& r : records) {
                  out.emplace_back(r.a, r.x);
              }
              return out;
          },
          py::arg("a_min"), py::arg("a_max"), py::arg("a_steps"), py::arg("x0"), py::arg("samples"),
          py::arg("transient") = 1000, py::arg("mode") = chaos::MapMode::Alg1);
    m.def("lyapunov", [](const chaos::MapParams& p, std::size_t n) { return lyapunov_dict(chaos::lyapunov(p, n)); },
          py::arg("params"), py::arg("n"));

    // sbox_gen
    m.def("generate_initial",
          [](const chaos::MapParams& key, std::size_t max_iterations) {
              gen::GenConfig cfg;
              cfg.max_iterations = max_iterations;
              cfg.refine = false;
              return to_list(gen::generate_initial(key, cfg).table());
          },
          py::arg("key"), py::arg("max_iterations") = 10'000'000);
    m.def("refine",
          [](const std::vector<int>& table, const chaos::MapParams& key, std::size_t max_passes) {
              gen::GenConfig cfg;
              cfg.refine_max_passes = max_passes;
              return to_list(gen::refine(SBox(to_table(table)), cfg, key).table());
          },
          py::arg("table"), py::arg("key"), py::arg("max_passes") = 64);
    m.def("generate",
          [](const chaos::MapParams& key, bool refine, std::size_t max_iterations, std::size_t max_passes) {
              gen::GenConfig cfg{max_iterations, refine, max_passes};
              return to_list(gen::generate(key, cfg).table());
          },
          py::arg("key"), py::arg("refine") = true, py::arg("max_iterations") = 10'000'000,
          py::arg("max_passes") = 64);

    // sbox_metrics; tables of 2^n entries, n <= 8
    m.def("is_bijective", [](const std::vector<int>& t) { return is_bijective(to_table(t)); });
    m.def("fixed_points", [](const std::vector<int>& t) { return metrics::fixed_points(to_octets(t)); });
    m.def("walsh_spectrum",
          [](const std::vector<int>& bits) { return metrics::walsh_spectrum(metrics::BooleanFunction(to_octets(bits))); });
    m.def("component_truth_table", [](const std::vector<int>& t, unsigned mask) {
        return metrics::component(to_octets(t), mask).bits();
    });
    m.def("nonlinearity", [](const std::vector<int>& t) {
        const auto r = metrics::nonlinearity(to_octets(t));
        return py::make_tuple(r.per_bit, r.min);
    });
    m.def("lap", [](const std::vector<int>& t) { return metrics::lap(to_octets(t)).value(); });
    m.def("dap", [](const std::vector<int>& t) { return metrics::dap(to_octets(t)).value(); });
    m.def("differential_uniformity", [](const std::vector<int>& t) { return metrics::differential_uniformity(to_octets(t)); });
    m.def("algebraic_degree", [](const std::vector<int>& t) {
        const auto r = metrics::algebraic_degree(to_octets(t));
        return py::make_tuple(r.per_bit, r.min);
    });
    m.def("report_json", [](const std::vector<int>& t) { return io::report_to_json(metrics::full_report(to_octets(t))); },
          "Full metrics report serialised as JSON");

    // reference_data
    m.def("paper_final_sbox", [] { return to_list(reference::paper_final_sbox()); });
    m.def("paper_initial_sbox", [] { return to_list(reference::paper_initial_sbox()); });
    m.def("aes_sbox", [] { return to_list(reference::aes_sbox()); });
    m.def("audit_final", [] {
        py::list out;
        for (const auto& mm : reference::audit(reference::fixtures().front()).mismatches) {
            py::dict d;
            d["field"] = mm.field;
            d["cell"] = mm.cell;
            d["expected"] = mm.expected;
            d["actual"] = mm.actual;
            out.append(d);
        }
        return out;
    });

    // formats
    m.def("to_hex", [](const std::vector<int>& t) { return io::to_hex(to_table(t)); });
    m.def("parse_hex", [](const std::string& text) { return to_list(io::parse_hex(text)); });
}
