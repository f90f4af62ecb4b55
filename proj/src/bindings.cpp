#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "heavyhex/code.hpp"
#include "heavyhex/dataset.hpp"
#include "heavyhex/evaluation.hpp"
#include "heavyhex/gauge.hpp"
#include "heavyhex/lookup.hpp"
#include "heavyhex/matching.hpp"
#include "heavyhex/noise.hpp"

namespace py = pybind11;

namespace {

using namespace heavyhex;

BitVec bits(const std::string& s) { return BitVec::from_string(s); }

ErrorType type_from(const std::string& name) {
    if (name == "x" || name == "X") return ErrorType::X;
    if (name == "z" || name == "Z") return ErrorType::Z;
    throw std::invalid_argument("error type must be 'x' or 'z'");
}

std::vector<std::vector<std::size_t>> supports(const std::vector<BitVec>& ops) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(ops.size());
    for (const auto& op : ops) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < op.size(); ++i) {
            if (op.get(i)) s.push_back(i);
        }
        out.push_back(std::move(s));
    }
    return out;
}

NoiseConfig noise_config(const std::string& model, double p_step, int steps,
                         bool syndrome_noise) {
    NoiseConfig nc;
    nc.model = noise_model_from_string(model);
    nc.p_step = p_step;
    nc.steps = steps;
    nc.syndrome_noise = syndrome_noise;
    nc.validate();
    return nc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heavy hexagonal code workbench: layout, canonicalization, decoding";
    m.attr("__version__") = "0.1.0";

    m.def(
        "layout",
        [](int d) {
            CodeLayout lay = build_layout(d);
            py::dict out;
            out["d"] = lay.d;
            out["n_qubits"] = lay.n_qubits;
            out["x_gauge"] = supports(lay.x_gauge_generators);
            out["z_gauge"] = supports(lay.z_gauge_generators);
            out["z_stabilizers"] = supports(lay.z_stabilizers);
            out["x_stabilizers"] = supports(lay.x_stabilizers);
            out["logical_x"] = supports({lay.logical_x})[0];
            out["logical_z"] = supports({lay.logical_z})[0];
            return out;
        },
        py::arg("d"), "Operator supports of the distance-d heavy hexagonal code");

    m.def(
        "syndrome",
        [](int d, const std::string& error_x, const std::string& error_z) {
            CodeLayout lay = build_layout(d);
            Syndrome syn = syndrome_of(lay, bits(error_x), bits(error_z));
            return py::make_tuple(syn.z_bits.str(), syn.x_bits.str());
        },
        py::arg("d"), py::arg("error_x"), py::arg("error_z"),
        "Measure (z_bits, x_bits) for an error pair given as '0'/'1' strings");

    m.def(
        "canonical_bitflip",
        [](int d, const std::string& error, const std::string& method) {
            CodeLayout lay = build_layout(d);
            GaugeBasis gb = x_gauge_basis(lay);
            BitVec e = bits(error);
            if (method == "exact") return canonical_bitflip_exact(e, gb).str();
            if (method == "search") return canonical_bitflip_search(e, gb).str();
            if (method == "rank")
                return canonical_bitflip_rank({e}, lay, gb, true).front().str();
            throw std::invalid_argument("method must be search, rank, or exact");
        },
        py::arg("d"), py::arg("error"), py::arg("method") = "exact");

    m.def(
        "canonical_phaseflip",
        [](int d, const std::string& error) {
            return canonical_phaseflip(bits(error), d).str();
        },
        py::arg("d"), py::arg("error"));

    m.def(
        "class_count",
        [](int d, const std::string& type) {
            CodeLayout lay = build_layout(d);
            return count_classes(lay, type_from(type));
        },
        py::arg("d"), py::arg("type"));

    m.def("effective_cycle_prob", &effective_cycle_prob, py::arg("p_step"),
          py::arg("steps") = 11);

    m.def(
        "mwpm_decode",
        [](int d, const std::string& syndrome, const std::string& type) {
            CodeLayout lay = build_layout(d);
            if (type_from(type) == ErrorType::X)
                return mwpm_decode_bitflip(lay, bits(syndrome)).correction.str();
            return mwpm_decode_phaseflip(lay, bits(syndrome)).str();
        },
        py::arg("d"), py::arg("syndrome"), py::arg("type"));

    m.def(
        "lookup_decode",
        [](int d, const std::string& syndrome, const std::string& type, double q) {
            CodeLayout lay = build_layout(d);
            return lookup_decode(lay, bits(syndrome), type_from(type), q).str();
        },
        py::arg("d"), py::arg("syndrome"), py::arg("type"), py::arg("q"));

    m.def(
        "generate_dataset",
        [](const std::string& path, int d, const std::string& model, double p_step, int steps,
           bool syndrome_noise, std::uint64_t n, std::uint64_t seed,
           const std::string& canonical) {
            CodeLayout lay = build_layout(d);
            DatasetHeader header;
            header.d = d;
            header.noise = noise_config(model, p_step, steps, syndrome_noise);
            header.n = n;
            header.seed = seed;
            header.noise.seed = seed;
            header.canonical = canonical_method_from_string(canonical);
            generate_dataset_file(path, lay, header);
        },
        py::arg("path"), py::arg("d"), py::arg("model"), py::arg("p_step"),
        py::arg("steps") = 11, py::arg("syndrome_noise") = false, py::arg("n") = 1000,
        py::arg("seed") = 0, py::arg("canonical") = "exact",
        "Write a JSONL dataset (header line + one record per line)");

    m.def(
        "logical_error_rate",
        [](int d, const std::string& decoder, const std::string& type, const std::string& model,
           double p_step, int steps, bool syndrome_noise, long trials, std::uint64_t seed,
           int workers) {
            CodeLayout lay = build_layout(d);
            NoiseConfig nc = noise_config(model, p_step, steps, syndrome_noise);
            ErrorType et = type_from(type);
            std::unique_ptr<Decoder> dec;
            if (decoder == "mwpm") {
                dec = std::make_unique<MwpmDecoder>(lay, et);
            } else if (decoder == "lookup") {
                dec = std::make_unique<TableDecoder>(lay, et, nc.effective_prob());
            } else {
                throw std::invalid_argument(
                    "decoder must be 'mwpm' or 'lookup' (train ffnn models via the CLI)");
            }
            CurvePoint pt = logical_error_rate(*dec, lay, nc, trials, seed, workers);
            py::dict out;
            out["d"] = pt.d;
            out["p_step"] = pt.p_step;
            out["q_effective"] = pt.q_effective;
            out["trials"] = pt.trials;
            out["failures"] = pt.failures;
            out["rate"] = pt.rate;
            out["ci_lo"] = pt.ci_lo;
            out["ci_hi"] = pt.ci_hi;
            return out;
        },
        py::arg("d"), py::arg("decoder"), py::arg("type"), py::arg("model") = "bitflip",
        py::arg("p_step") = 0.01, py::arg("steps") = 11, py::arg("syndrome_noise") = false,
        py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("workers") = 1);
}
