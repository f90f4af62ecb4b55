#include "heavyhex/dataset.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace heavyhex {

namespace {

using nlohmann::json;

std::string to_json_line(const DatasetHeader& h) {
    json noise = {
        {"model", to_string(h.noise.model)},
        {"p_step", h.noise.p_step},
        {"steps", h.noise.steps},
        {"syndrome_noise", h.noise.syndrome_noise},
    };
    json j = {
        {"format_version", h.format_version}, {"d", h.d},   {"noise", noise},
        {"n", h.n},                           {"seed", h.seed},
        {"canonical", to_string(h.canonical)},
    };
    return j.dump();
}

std::string to_json_line(const DatasetRecord& r) {
    json j = {
        {"syndrome_z", r.syndrome_z.str()}, {"syndrome_x", r.syndrome_x.str()},
        {"error_x", r.error_x.str()},       {"error_z", r.error_z.str()},
        {"canon_x", r.canon_x.str()},       {"canon_z", r.canon_z.str()},
    };
    return j.dump();
}

void validate_header(const DatasetHeader& h) {
    if (h.format_version != 1)
        throw std::invalid_argument("unsupported dataset format_version " +
                                    std::to_string(h.format_version));
    if (h.n == 0) throw std::invalid_argument("dataset record count must be positive");
    h.noise.validate();
}

// Sample record i without its canon_x field (filled in by the caller, since
// the batch method needs the whole error stream).
DatasetRecord sample_record(const CodeLayout& layout, const DatasetHeader& h, std::uint64_t i) {
    Rng rng(h.seed, i);
    const PauliSample ps = sample_error(layout, h.noise, rng);
    const Syndrome syn = measure_syndrome(layout, ps, h.noise, rng);
    DatasetRecord rec;
    rec.syndrome_z = syn.z_bits;
    rec.syndrome_x = syn.x_bits;
    rec.error_x = ps.e_x;
    rec.error_z = ps.e_z;
    rec.canon_z = h.canonical == CanonicalMethod::none ? ps.e_z
                                                       : canonical_phaseflip(ps.e_z, layout.d);
    return rec;
}

void generate_records(const CodeLayout& layout, const DatasetHeader& h,
                      const std::function<void(const DatasetRecord&)>& emit) {
    validate_header(h);
    if (h.d != layout.d)
        throw std::invalid_argument("header distance " + std::to_string(h.d) +
                                    " does not match the layout (d = " +
                                    std::to_string(layout.d) + ")");

    GaugeBasis gb;
    if (h.canonical != CanonicalMethod::none) {
        gb = x_gauge_basis(layout);
        if (h.canonical == CanonicalMethod::search && !gb.has_span())
            throw std::invalid_argument(
                "canonical method 'search' is unavailable at d = " + std::to_string(layout.d) +
                " (span too large); use 'exact'");
    }

    // The batch method needs the whole error stream up front; the others
    // label record by record.
    std::vector<BitVec> rank_labels;
    if (h.canonical == CanonicalMethod::rank) {
        std::vector<BitVec> errors;
        errors.reserve(h.n);
        for (std::uint64_t i = 0; i < h.n; ++i) {
            Rng rng(h.seed, i);
            errors.push_back(sample_error(layout, h.noise, rng).e_x);
        }
        rank_labels = canonical_bitflip_rank(errors, layout, gb, true);
    }

    for (std::uint64_t i = 0; i < h.n; ++i) {
        DatasetRecord rec = sample_record(layout, h, i);
        switch (h.canonical) {
            case CanonicalMethod::none: rec.canon_x = rec.error_x; break;
            case CanonicalMethod::rank: rec.canon_x = rank_labels[i]; break;
            case CanonicalMethod::search: rec.canon_x = canonical_bitflip_search(rec.error_x, gb); break;
            case CanonicalMethod::exact: rec.canon_x = canonical_bitflip_exact(rec.error_x, gb); break;
        }
        emit(rec);
    }
}

}  // namespace

std::string to_string(CanonicalMethod method) {
    switch (method) {
        case CanonicalMethod::search: return "search";
        case CanonicalMethod::rank: return "rank";
        case CanonicalMethod::exact: return "exact";
        case CanonicalMethod::none: return "none";
    }
    throw std::logic_error("unreachable canonical method");
}

CanonicalMethod canonical_method_from_string(const std::string& name) {
    if (name == "search") return CanonicalMethod::search;
    if (name == "rank") return CanonicalMethod::rank;
    if (name == "exact") return CanonicalMethod::exact;
    if (name == "none") return CanonicalMethod::none;
    throw std::invalid_argument("unknown canonical method '" + name +
                                "' (expected search, rank, exact or none)");
}

void write_dataset(std::ostream& out, const CodeLayout& layout, const DatasetHeader& header) {
    out << to_json_line(header) << '\n';
    generate_records(layout, header,
                     [&](const DatasetRecord& rec) { out << to_json_line(rec) << '\n'; });
}

void generate_dataset_file(const std::string& path, const CodeLayout& layout,
                           const DatasetHeader& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_dataset(out, layout, header);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Dataset generate_dataset(const CodeLayout& layout, const DatasetHeader& header) {
    Dataset ds;
    ds.header = header;
    ds.records.reserve(header.n);
    generate_records(layout, header,
                     [&](const DatasetRecord& rec) { ds.records.push_back(rec); });
    return ds;
}

void save_dataset(const std::string& path, const Dataset& ds) {
    if (ds.header.n != ds.records.size())
        throw std::invalid_argument("save_dataset: header.n does not match the record count");
    validate_header(ds.header);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << to_json_line(ds.header) << '\n';
    for (const auto& rec : ds.records) out << to_json_line(rec) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

[[noreturn]] void fail_at(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

BitVec parse_bits(const json& j, const char* key, std::size_t expected, const std::string& path,
                  std::size_t line) {
    if (!j.contains(key) || !j[key].is_string()) fail_at(path, line, std::string("missing bit-string field '") + key + "'");
    const std::string s = j[key].get<std::string>();
    if (s.size() != expected)
        fail_at(path, line, std::string("field '") + key + "' has length " +
                                std::to_string(s.size()) + ", expected " + std::to_string(expected));
    try {
        return BitVec::from_string(s);
    } catch (const std::exception& e) {
        fail_at(path, line, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

Dataset load_dataset(const std::string& path, bool verify) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file, header expected");

    Dataset ds;
    std::size_t line_no = 1;
    try {
        const json j = json::parse(line);
        ds.header.format_version = j.at("format_version").get<int>();
        ds.header.d = j.at("d").get<int>();
        ds.header.n = j.at("n").get<std::uint64_t>();
        ds.header.seed = j.at("seed").get<std::uint64_t>();
        ds.header.canonical = canonical_method_from_string(j.at("canonical").get<std::string>());
        const json& noise = j.at("noise");
        ds.header.noise.model = noise_model_from_string(noise.at("model").get<std::string>());
        ds.header.noise.p_step = noise.at("p_step").get<double>();
        ds.header.noise.steps = noise.at("steps").get<int>();
        ds.header.noise.syndrome_noise = noise.at("syndrome_noise").get<bool>();
        ds.header.noise.seed = ds.header.seed;
        validate_header(ds.header);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        fail_at(path, line_no, std::string("bad header: ") + e.what());
    }

    const CodeLayout layout = build_layout(ds.header.d);
    const std::size_t n_syn_z = (layout.n_qubits - 1) / 2;
    const std::size_t n_syn_x = static_cast<std::size_t>(layout.d) - 1;
    GaugeBasis gb;
    if (verify && ds.header.canonical != CanonicalMethod::none) gb = x_gauge_basis(layout);

    ds.records.reserve(ds.header.n);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception& e) {
            fail_at(path, line_no, std::string("malformed record: ") + e.what());
        }
        DatasetRecord rec;
        rec.syndrome_z = parse_bits(j, "syndrome_z", n_syn_z, path, line_no);
        rec.syndrome_x = parse_bits(j, "syndrome_x", n_syn_x, path, line_no);
        rec.error_x = parse_bits(j, "error_x", layout.n_qubits, path, line_no);
        rec.error_z = parse_bits(j, "error_z", layout.n_qubits, path, line_no);
        rec.canon_x = parse_bits(j, "canon_x", layout.n_qubits, path, line_no);
        rec.canon_z = parse_bits(j, "canon_z", layout.n_qubits, path, line_no);

        if (verify) {
            if (!ds.header.noise.syndrome_noise) {
                const Syndrome syn = syndrome_of(layout, rec.error_x, rec.error_z);
                if (syn.z_bits != rec.syndrome_z || syn.x_bits != rec.syndrome_x)
                    fail_at(path, line_no, "stored syndrome disagrees with the error fields");
            }
            if (ds.header.canonical == CanonicalMethod::none) {
                if (rec.canon_x != rec.error_x || rec.canon_z != rec.error_z)
                    fail_at(path, line_no, "canonical fields differ from raw fields despite canonical = none");
            } else {
                // search, rank (unified) and exact all produce the coset leader.
                if (rec.canon_x != canonical_bitflip_exact(rec.error_x, gb))
                    fail_at(path, line_no, "canon_x is not the class representative of error_x");
                if (rec.canon_z != canonical_phaseflip(rec.error_z, layout.d))
                    fail_at(path, line_no, "canon_z is not the class representative of error_z");
            }
        }
        ds.records.push_back(std::move(rec));
    }

    if (ds.records.size() != ds.header.n)
        throw std::runtime_error(path + ": header promises " + std::to_string(ds.header.n) +
                                 " records but file holds " + std::to_string(ds.records.size()));
    return ds;
}

}  // namespace heavyhex
