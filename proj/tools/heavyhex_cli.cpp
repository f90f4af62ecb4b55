#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavyhex/code.hpp"
#include "heavyhex/dataset.hpp"
#include "heavyhex/evaluation.hpp"
#include "heavyhex/gauge.hpp"
#include "heavyhex/mlp.hpp"
#include "heavyhex/noise.hpp"
#include "heavyhex/runconfig.hpp"
#include "heavyhex/svg.hpp"

namespace {

using namespace heavyhex;
using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::logic_error("double formatting failed");
    return std::string(buf, end);
}

std::string to_cfg(const std::string& v) { return v; }
std::string to_cfg(bool v) { return v ? "true" : "false"; }
std::string to_cfg(double v) { return fmt_double(v); }
std::string to_cfg(int v) { return std::to_string(v); }
std::string to_cfg(long v) { return std::to_string(v); }
std::string to_cfg(std::uint64_t v) { return std::to_string(v); }

template <class T>
T from_cfg(const RunConfig& cfg, const std::string& key);
template <>
std::string from_cfg(const RunConfig& cfg, const std::string& key) {
    return cfg.get(key);
}
template <>
bool from_cfg(const RunConfig& cfg, const std::string& key) {
    return cfg.get_bool(key);
}
template <>
double from_cfg(const RunConfig& cfg, const std::string& key) {
    return cfg.get_double(key);
}
template <>
int from_cfg(const RunConfig& cfg, const std::string& key) {
    long v = cfg.get_long(key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw std::invalid_argument("config key '" + key + "' out of range");
    return static_cast<int>(v);
}
template <>
long from_cfg(const RunConfig& cfg, const std::string& key) {
    return cfg.get_long(key);
}
template <>
std::uint64_t from_cfg(const RunConfig& cfg, const std::string& key) {
    return cfg.get_u64(key);
}

/// Flag > config file > built-in default, with every resolved value recorded
/// for the provenance printout.
class Resolver {
public:
    Resolver(CLI::App* cmd, const std::string& config_path,
             const std::set<std::string>& allowed)
        : cmd_(cmd) {
        if (!config_path.empty()) file_ = load_runconfig(config_path, allowed);
    }

    template <class T>
    T pick(const std::string& flag, const std::string& key, T flag_value) {
        T v = flag_value;
        if (cmd_->count(flag) == 0 && file_.has(key)) v = from_cfg<T>(file_, key);
        resolved_.set(key, to_cfg(v));
        return v;
    }

    const RunConfig& resolved() const { return resolved_; }

private:
    CLI::App* cmd_;
    RunConfig file_;
    RunConfig resolved_;
};

void print_resolved(const std::string& name, const RunConfig& cfg) {
    std::cerr << "# " << name << ": resolved configuration\n";
    for (const auto& [k, v] : cfg.entries()) std::cerr << "#   " << k << " = " << v << "\n";
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        std::size_t b = item.find_last_not_of(" \t");
        out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": '" + s + "' is not a number");
    }
    if (used != s.size()) throw std::invalid_argument(what + ": '" + s + "' is not a number");
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long v;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": '" + s + "' is not an integer");
    }
    if (used != s.size() || v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max())
        throw std::invalid_argument(what + ": '" + s + "' is not an integer");
    return static_cast<int>(v);
}

ErrorType type_from_string(const std::string& s) {
    if (s == "x") return ErrorType::X;
    if (s == "z") return ErrorType::Z;
    throw std::invalid_argument("error type must be 'x' or 'z', got '" + s + "'");
}

json supports_json(const std::vector<BitVec>& ops) {
    json arr = json::array();
    for (const auto& op : ops) {
        json s = json::array();
        for (std::size_t i = 0; i < op.size(); ++i) {
            if (op.get(i)) s.push_back(i);
        }
        arr.push_back(std::move(s));
    }
    return arr;
}

std::string supports_text(const std::vector<BitVec>& ops) {
    std::ostringstream os;
    for (const auto& op : ops) {
        os << " {";
        bool first = true;
        for (std::size_t i = 0; i < op.size(); ++i) {
            if (!op.get(i)) continue;
            os << (first ? "" : ",") << i;
            first = false;
        }
        os << "}";
    }
    return os.str();
}

json config_json(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.entries()) j[k] = v;
    return j;
}

void write_points_csv(std::ostream& out, const std::vector<CurvePoint>& points,
                      const std::string& decoder, const std::string& labels,
                      const RunConfig& cfg) {
    for (const auto& [k, v] : cfg.entries()) out << "# " << k << " = " << v << "\n";
    out << "d,p_step,q_effective,trials,failures,rate,ci_lo,ci_hi,decoder,labels\n";
    for (const auto& pt : points) {
        out << pt.d << ',' << fmt_double(pt.p_step) << ',' << fmt_double(pt.q_effective) << ','
            << pt.trials << ',' << pt.failures << ',' << fmt_double(pt.rate) << ','
            << fmt_double(pt.ci_lo) << ',' << fmt_double(pt.ci_hi) << ',' << decoder << ','
            << labels << '\n';
    }
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

const char* status_name(CrossingStatus s) {
    switch (s) {
        case CrossingStatus::ok: return "ok";
        case CrossingStatus::degenerate: return "degenerate";
        case CrossingStatus::outside_range: return "outside_range";
    }
    return "?";
}

json pseudo_json(int d, const PseudoThreshold& pt) {
    json j;
    j["d"] = d;
    j["status"] = status_name(pt.status);
    if (pt.status != CrossingStatus::outside_range) {
        j["p_step"] = pt.p_step;
        j["q_effective"] = pt.q_effective;
        j["bracket"] = {pt.bracket_lo, pt.bracket_hi};
    }
    if (!pt.note.empty()) j["note"] = pt.note;
    return j;
}

json threshold_json(const ThresholdEstimate& est) {
    json pairs = json::array();
    for (const auto& pc : est.pairs) {
        json j;
        j["d_low"] = pc.d_low;
        j["d_high"] = pc.d_high;
        j["status"] = status_name(pc.status);
        if (pc.status == CrossingStatus::ok) j["p_step"] = pc.p_step;
        if (!pc.note.empty()) j["note"] = pc.note;
        pairs.push_back(std::move(j));
    }
    json j;
    j["pairs"] = std::move(pairs);
    j["n_crossings"] = est.n_crossings;
    if (est.n_crossings > 0) j["mean_p_step"] = est.mean_p_step;
    return j;
}

// ---------------------------------------------------------------- layout --

void run_layout(int d, bool as_json) {
    RunConfig cfg;
    cfg.set("d", std::to_string(d));
    print_resolved("layout", cfg);
    CodeLayout lay = build_layout(d);
    if (as_json) {
        json j;
        j["d"] = lay.d;
        j["n_qubits"] = lay.n_qubits;
        j["counts"] = {{"x_gauge", lay.x_gauge_generators.size()},
                       {"z_gauge", lay.z_gauge_generators.size()},
                       {"z_stabilizers", lay.z_stabilizers.size()},
                       {"x_stabilizers", lay.x_stabilizers.size()}};
        j["x_gauge"] = supports_json(lay.x_gauge_generators);
        j["z_gauge"] = supports_json(lay.z_gauge_generators);
        j["z_stabilizers"] = supports_json(lay.z_stabilizers);
        j["x_stabilizers"] = supports_json(lay.x_stabilizers);
        j["logical_x"] = supports_json({lay.logical_x})[0];
        j["logical_z"] = supports_json({lay.logical_z})[0];
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "d = " << lay.d << ", " << lay.n_qubits << " data qubits\n";
    std::cout << "x_gauge (" << lay.x_gauge_generators.size()
              << "):" << supports_text(lay.x_gauge_generators) << "\n";
    std::cout << "z_gauge (" << lay.z_gauge_generators.size()
              << "):" << supports_text(lay.z_gauge_generators) << "\n";
    std::cout << "z_stabilizers (" << lay.z_stabilizers.size()
              << "):" << supports_text(lay.z_stabilizers) << "\n";
    std::cout << "x_stabilizers (" << lay.x_stabilizers.size()
              << "):" << supports_text(lay.x_stabilizers) << "\n";
    std::cout << "logical_x:" << supports_text({lay.logical_x}) << "\n";
    std::cout << "logical_z:" << supports_text({lay.logical_z}) << "\n";
}

// -------------------------------------------------------------- gen-data --

struct GenDataOpts {
    std::string config;
    int d = 3;
    std::string model = "bitflip";
    double p_step = 0.01;
    int steps = 11;
    bool syndrome_noise = false;
    std::uint64_t n = 1000;
    std::uint64_t seed = 0;
    std::string canonical = "exact";
    std::string out;
};

void run_gen_data(CLI::App* cmd, const GenDataOpts& o) {
    static const std::set<std::string> kKeys{"d",    "model", "p_step",    "steps",
                                             "syndrome_noise", "n", "seed", "canonical",
                                             "out"};
    Resolver r(cmd, o.config, kKeys);
    DatasetHeader h;
    h.d = r.pick("--d", "d", o.d);
    h.noise.model = noise_model_from_string(r.pick("--model", "model", o.model));
    h.noise.p_step = r.pick("--p-step", "p_step", o.p_step);
    h.noise.steps = r.pick("--steps", "steps", o.steps);
    h.noise.syndrome_noise = r.pick("--syndrome-noise", "syndrome_noise", o.syndrome_noise);
    h.n = r.pick("--n", "n", o.n);
    h.seed = r.pick("--seed", "seed", o.seed);
    h.noise.seed = h.seed;
    h.canonical = canonical_method_from_string(r.pick("--canonical", "canonical", o.canonical));
    std::string out = r.pick("--out", "out", o.out);
    if (out.empty()) throw std::invalid_argument("gen-data: --out is required");
    print_resolved("gen-data", r.resolved());

    CodeLayout lay = build_layout(h.d);
    generate_dataset_file(out, lay, h);
    std::cout << "wrote " << h.n << " records to " << out << "\n";
}

// ---------------------------------------------------------- canonicalize --

void run_canonicalize(const std::string& in, const std::string& out,
                      const std::string& method) {
    RunConfig cfg;
    cfg.set("in", in);
    cfg.set("out", out);
    cfg.set("method", method);
    print_resolved("canonicalize", cfg);

    Dataset ds = load_dataset(in);
    CodeLayout lay = build_layout(ds.header.d);
    if (method == "phase") {
        for (auto& rec : ds.records) rec.canon_z = canonical_phaseflip(rec.error_z, lay.d);
    } else {
        CanonicalMethod m = canonical_method_from_string(method);
        if (m == CanonicalMethod::none)
            throw std::invalid_argument(
                "canonicalize: method must be search, rank, exact or phase");
        GaugeBasis gb = x_gauge_basis(lay);
        if (m == CanonicalMethod::search && !gb.has_span())
            throw std::invalid_argument("canonicalize: search is unavailable at d = " +
                                        std::to_string(lay.d) + " (span too large)");
        if (m == CanonicalMethod::rank) {
            std::vector<BitVec> errors;
            errors.reserve(ds.records.size());
            for (const auto& rec : ds.records) errors.push_back(rec.error_x);
            std::vector<BitVec> reps = canonical_bitflip_rank(errors, lay, gb, true);
            for (std::size_t i = 0; i < ds.records.size(); ++i) ds.records[i].canon_x = reps[i];
        } else {
            for (auto& rec : ds.records) {
                rec.canon_x = m == CanonicalMethod::search
                                  ? canonical_bitflip_search(rec.error_x, gb)
                                  : canonical_bitflip_exact(rec.error_x, gb);
            }
        }
        for (auto& rec : ds.records) rec.canon_z = canonical_phaseflip(rec.error_z, lay.d);
        ds.header.canonical = m;
    }
    save_dataset(out, ds);
    std::cout << "rewrote " << ds.records.size() << " records to " << out << "\n";
}

// ------------------------------------------------------------------ train --

struct TrainOpts {
    std::string config;
    std::string data;
    std::string labels = "canonical";
    std::string type;
    int hidden = 0;
    int epochs = 1000;
    int batch = 10000;
    double lr = 0.01;
    int instances = 5;
    std::uint64_t seed = 1;
    std::string out;
};

void run_train(CLI::App* cmd, const TrainOpts& o) {
    static const std::set<std::string> kKeys{"data", "labels", "type",      "hidden",
                                             "epochs", "batch", "lr",        "instances",
                                             "seed", "out"};
    Resolver r(cmd, o.config, kKeys);
    std::string data = r.pick("--data", "data", o.data);
    std::string labels = r.pick("--labels", "labels", o.labels);
    std::string type_str = r.pick("--type", "type", o.type);
    int hidden = r.pick("--hidden", "hidden", o.hidden);
    TrainConfig tc;
    tc.epochs = r.pick("--epochs", "epochs", o.epochs);
    tc.batch_size = r.pick("--batch", "batch", o.batch);
    tc.learning_rate = r.pick("--lr", "lr", o.lr);
    tc.instances = r.pick("--instances", "instances", o.instances);
    std::uint64_t seed = r.pick("--seed", "seed", o.seed);
    std::string out = r.pick("--out", "out", o.out);
    if (data.empty()) throw std::invalid_argument("train: --data is required");
    if (out.empty()) throw std::invalid_argument("train: --out is required");
    if (labels != "raw" && labels != "canonical")
        throw std::invalid_argument("train: --labels must be raw or canonical");
    print_resolved("train", r.resolved());

    Dataset ds = load_dataset(data);
    CodeLayout lay = build_layout(ds.header.d);
    bool canonical = labels == "canonical";
    if (canonical && ds.header.canonical == CanonicalMethod::none)
        throw std::invalid_argument(
            "train: dataset was generated with canonical = none; rerun canonicalize or train "
            "with --labels raw");

    ErrorType type;
    if (!type_str.empty()) {
        type = type_from_string(type_str);
    } else if (ds.header.noise.model == NoiseModel::bitflip) {
        type = ErrorType::X;
    } else if (ds.header.noise.model == NoiseModel::phaseflip) {
        type = ErrorType::Z;
    } else {
        throw std::invalid_argument(
            "train: depolarizing datasets need an explicit --type x or --type z (one model "
            "per error type)");
    }
    if (ds.header.noise.model == NoiseModel::bitflip && type == ErrorType::Z)
        throw std::invalid_argument("train: bitflip datasets contain no phase errors");
    if (ds.header.noise.model == NoiseModel::phaseflip && type == ErrorType::X)
        throw std::invalid_argument("train: phaseflip datasets contain no bit flip errors");

    InputKind input = input_kind_for(ds.header.noise.model);
    LabelKind target = label_kind_for(type, canonical);
    if (hidden == 0) hidden = default_hidden_dim(lay.d);

    Eigen::MatrixXd inputs = dataset_inputs(ds, input);
    Eigen::MatrixXd targets = dataset_labels(ds, target);

    MlpModel best;
    double best_loss = 0.0;
    int best_instance = -1;
    for (int k = 0; k < tc.instances; ++k) {
        MlpModel m = mlp_init(static_cast<int>(inputs.cols()), hidden,
                              static_cast<int>(targets.cols()), seed + static_cast<std::uint64_t>(k));
        m.input = input;
        m.target = target;
        std::vector<double> losses = mlp_train(m, inputs, targets, tc);
        double final_loss = losses.back();
        std::cerr << "# instance " << k << ": final epoch loss " << fmt_double(final_loss)
                  << "\n";
        if (best_instance < 0 || final_loss < best_loss) {
            best = std::move(m);
            best_loss = final_loss;
            best_instance = k;
        }
    }

    std::ostringstream note;
    bool first = true;
    for (const auto& [k, v] : r.resolved().entries()) {
        note << (first ? "" : ", ") << k << " = " << v;
        first = false;
    }
    best.note = note.str();
    save_model(out, best);
    std::cout << "saved instance " << best_instance << " (final loss " << fmt_double(best_loss)
              << ") to " << out << "\n";
}

// ------------------------------------------------------------------- eval --

struct EvalOpts {
    std::string config;
    int d = 3;
    std::string decoder = "mwpm";
    std::string ffnn;
    std::string type = "x";
    std::string model = "bitflip";
    double p_step = 0.01;
    int steps = 11;
    bool syndrome_noise = false;
    long trials = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out_csv;
    std::string out_json;
};

struct BuiltDecoder {
    std::unique_ptr<Decoder> decoder;
    std::string labels = "-";
};

BuiltDecoder build_decoder(const CodeLayout& lay, const std::string& kind,
                           const std::string& ffnn_path, ErrorType type, double q) {
    BuiltDecoder b;
    if (kind == "ffnn") {
        if (ffnn_path.empty())
            throw std::invalid_argument("decoder 'ffnn' needs --ffnn MODEL_PATH");
        MlpModel m = load_model(ffnn_path);
        b.labels = (m.target == LabelKind::canon_x || m.target == LabelKind::canon_z)
                       ? "canonical"
                       : "raw";
        auto dec = std::make_unique<FfnnDecoder>(lay, std::move(m));
        if (dec->type() != type)
            throw std::invalid_argument("model at '" + ffnn_path +
                                        "' decodes the other error type");
        b.decoder = std::move(dec);
    } else if (kind == "mwpm") {
        b.decoder = std::make_unique<MwpmDecoder>(lay, type);
    } else if (kind == "lookup") {
        b.decoder = std::make_unique<TableDecoder>(lay, type, q);
    } else {
        throw std::invalid_argument("unknown decoder '" + kind +
                                    "' (expected ffnn, mwpm or lookup)");
    }
    return b;
}

void run_eval(CLI::App* cmd, const EvalOpts& o) {
    static const std::set<std::string> kKeys{
        "d",     "decoder", "ffnn",   "type",    "model",   "p_step",  "steps",
        "syndrome_noise", "trials", "seed", "workers", "out_csv", "out_json"};
    Resolver r(cmd, o.config, kKeys);
    int d = r.pick("--d", "d", o.d);
    std::string decoder = r.pick("--decoder", "decoder", o.decoder);
    std::string ffnn = r.pick("--ffnn", "ffnn", o.ffnn);
    std::string type_str = r.pick("--type", "type", o.type);
    NoiseConfig nc;
    nc.model = noise_model_from_string(r.pick("--model", "model", o.model));
    nc.p_step = r.pick("--p-step", "p_step", o.p_step);
    nc.steps = r.pick("--steps", "steps", o.steps);
    nc.syndrome_noise = r.pick("--syndrome-noise", "syndrome_noise", o.syndrome_noise);
    long trials = r.pick("--trials", "trials", o.trials);
    std::uint64_t seed = r.pick("--seed", "seed", o.seed);
    nc.seed = seed;
    int workers = r.pick("--workers", "workers", o.workers);
    std::string out_csv = r.pick("--out-csv", "out_csv", o.out_csv);
    std::string out_json = r.pick("--out-json", "out_json", o.out_json);
    print_resolved("eval", r.resolved());

    CodeLayout lay = build_layout(d);
    ErrorType type = type_from_string(type_str);
    BuiltDecoder b = build_decoder(lay, decoder, ffnn, type, nc.effective_prob());
    CurvePoint pt = logical_error_rate(*b.decoder, lay, nc, trials, seed, workers);

    std::ostringstream csv;
    write_points_csv(csv, {pt}, b.decoder->name(), b.labels, r.resolved());
    std::cout << csv.str();
    if (!out_csv.empty()) write_file(out_csv, csv.str());
    if (!out_json.empty()) {
        json j;
        j["config"] = config_json(r.resolved());
        j["point"] = {{"d", pt.d},           {"p_step", pt.p_step},
                      {"q_effective", pt.q_effective}, {"trials", pt.trials},
                      {"failures", pt.failures},       {"rate", pt.rate},
                      {"ci_lo", pt.ci_lo},   {"ci_hi", pt.ci_hi},
                      {"decoder", b.decoder->name()},  {"labels", b.labels}};
        write_file(out_json, j.dump(2) + "\n");
    }
}

// ------------------------------------------------------------------ sweep --

struct SweepOpts {
    std::string config;
    std::string ds = "3";
    std::string decoder = "mwpm";
    std::vector<std::string> ffnn;
    std::string type = "x";
    std::string model = "bitflip";
    std::string p_steps = "0.001,0.002,0.005,0.01,0.02,0.05";
    int steps = 11;
    bool syndrome_noise = false;
    long trials = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out_csv;
    std::string out_json;
    std::string out_svg;
};

void run_sweep(CLI::App* cmd, const SweepOpts& o) {
    static const std::set<std::string> kKeys{
        "ds",    "decoder", "ffnn",   "type",    "model",   "p_steps", "steps",
        "syndrome_noise", "trials", "seed", "workers", "out_csv", "out_json", "out_svg"};
    Resolver r(cmd, o.config, kKeys);
    std::string ds_str = r.pick("--ds", "ds", o.ds);
    std::string decoder = r.pick("--decoder", "decoder", o.decoder);
    std::string ffnn_joined;
    for (const auto& f : o.ffnn) {
        if (!ffnn_joined.empty()) ffnn_joined += ',';
        ffnn_joined += f;
    }
    std::string ffnn = r.pick("--ffnn", "ffnn", ffnn_joined);
    std::string type_str = r.pick("--type", "type", o.type);
    std::string model = r.pick("--model", "model", o.model);
    std::string p_steps_str = r.pick("--p-steps", "p_steps", o.p_steps);
    int steps = r.pick("--steps", "steps", o.steps);
    bool syndrome_noise = r.pick("--syndrome-noise", "syndrome_noise", o.syndrome_noise);
    long trials = r.pick("--trials", "trials", o.trials);
    std::uint64_t seed = r.pick("--seed", "seed", o.seed);
    int workers = r.pick("--workers", "workers", o.workers);
    std::string out_csv = r.pick("--out-csv", "out_csv", o.out_csv);
    std::string out_json = r.pick("--out-json", "out_json", o.out_json);
    std::string out_svg = r.pick("--out-svg", "out_svg", o.out_svg);
    print_resolved("sweep", r.resolved());

    std::vector<int> dists;
    for (const auto& s : split_list(ds_str)) dists.push_back(parse_int(s, "sweep: --ds"));
    if (dists.empty()) throw std::invalid_argument("sweep: --ds must list at least one distance");
    std::vector<double> ps;
    for (const auto& s : split_list(p_steps_str))
        ps.push_back(parse_double(s, "sweep: --p-steps"));
    if (ps.empty())
        throw std::invalid_argument("sweep: --p-steps must list at least one probability");

    std::map<int, std::string> ffnn_paths;
    for (const auto& item : split_list(ffnn)) {
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("sweep: --ffnn entries look like D:MODEL_PATH");
        int d = parse_int(item.substr(0, colon), "sweep: --ffnn distance");
        ffnn_paths[d] = item.substr(colon + 1);
    }

    ErrorType type = type_from_string(type_str);
    std::vector<std::vector<CurvePoint>> curves;
    std::string labels = "-";
    for (int d : dists) {
        CodeLayout lay = build_layout(d);
        std::vector<CurvePoint> curve;
        for (double p : ps) {
            NoiseConfig nc;
            nc.model = noise_model_from_string(model);
            nc.p_step = p;
            nc.steps = steps;
            nc.syndrome_noise = syndrome_noise;
            nc.seed = seed;
            BuiltDecoder b =
                build_decoder(lay, decoder, ffnn_paths.count(d) ? ffnn_paths[d] : "", type,
                              nc.effective_prob());
            labels = b.labels;
            curve.push_back(logical_error_rate(*b.decoder, lay, nc, trials, seed, workers));
        }
        curves.push_back(std::move(curve));
    }

    std::vector<CurvePoint> all_points;
    for (const auto& c : curves) all_points.insert(all_points.end(), c.begin(), c.end());
    std::ostringstream csv;
    write_points_csv(csv, all_points, decoder, labels, r.resolved());
    std::cout << csv.str();
    if (!out_csv.empty()) write_file(out_csv, csv.str());

    json summary;
    summary["config"] = config_json(r.resolved());
    summary["pseudo_thresholds"] = json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        PseudoThreshold pt = pseudo_threshold(curves[i]);
        summary["pseudo_thresholds"].push_back(pseudo_json(dists[i], pt));
        std::cout << "pseudo-threshold d=" << dists[i] << ": " << status_name(pt.status);
        if (pt.status != CrossingStatus::outside_range)
            std::cout << " p_step=" << fmt_double(pt.p_step)
                      << " q_effective=" << fmt_double(pt.q_effective);
        if (!pt.note.empty()) std::cout << " (" << pt.note << ")";
        std::cout << "\n";
    }
    if (curves.size() >= 2) {
        ThresholdEstimate est = estimate_threshold(curves);
        summary["threshold"] = threshold_json(est);
        std::cout << "threshold: " << est.n_crossings << " crossing(s)";
        if (est.n_crossings > 0) std::cout << ", mean p_step " << fmt_double(est.mean_p_step);
        std::cout << "\n";
    }
    if (!out_json.empty()) write_file(out_json, summary.dump(2) + "\n");
    if (!out_svg.empty())
        write_sweep_svg(out_svg, curves, decoder + " logical error rate");
}

// ------------------------------------------------------------ bench-gauge --

struct BenchOpts {
    std::string config;
    int d = 3;
    std::uint64_t n = 10000;
    std::string methods;
    double q = 0.05;
    std::uint64_t seed = 0;
    std::string out_csv;
};

void run_bench(CLI::App* cmd, const BenchOpts& o) {
    static const std::set<std::string> kKeys{"d", "n", "methods", "q", "seed", "out_csv"};
    Resolver r(cmd, o.config, kKeys);
    int d = r.pick("--d", "d", o.d);
    std::uint64_t n = r.pick("--n", "n", o.n);
    std::string methods_str = r.pick("--methods", "methods", o.methods);
    double q = r.pick("--q", "q", o.q);
    std::uint64_t seed = r.pick("--seed", "seed", o.seed);
    std::string out_csv = r.pick("--out-csv", "out_csv", o.out_csv);
    print_resolved("bench-gauge", r.resolved());

    CodeLayout lay = build_layout(d);
    std::vector<std::string> methods = split_list(methods_str);
    if (methods.empty()) {
        methods = x_gauge_basis(lay).has_span()
                      ? std::vector<std::string>{"search", "rank", "exact"}
                      : std::vector<std::string>{"rank", "exact"};
    }
    std::vector<BenchRow> rows = bench_gauge(lay, n, methods, q, seed);

    std::ostringstream csv;
    for (const auto& [k, v] : r.resolved().entries()) csv << "# " << k << " = " << v << "\n";
    csv << "method,n,seconds\n";
    for (const auto& row : rows)
        csv << row.method << ',' << row.n << ',' << fmt_double(row.seconds) << '\n';
    std::cout << csv.str();
    if (!out_csv.empty()) write_file(out_csv, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heavy hexagonal code workbench"};
    app.set_version_flag("--version", "heavyhex 0.1.0 (dataset format 1, model format 1)");
    app.require_subcommand(1);

    auto* layout_cmd = app.add_subcommand("layout", "print generator and stabilizer supports");
    int layout_d = 3;
    bool layout_json = false;
    layout_cmd->add_option("--d", layout_d, "code distance (odd, >= 3)");
    layout_cmd->add_flag("--json", layout_json, "emit JSON");

    auto* gen_cmd = app.add_subcommand("gen-data", "sample a labeled dataset");
    GenDataOpts gen;
    gen_cmd->add_option("--config", gen.config, "key = value config file");
    gen_cmd->add_option("--d", gen.d, "code distance");
    gen_cmd->add_option("--model", gen.model, "noise model: bitflip, phaseflip, depolarizing");
    gen_cmd->add_option("--p-step", gen.p_step, "per-step error probability");
    gen_cmd->add_option("--steps", gen.steps, "steps per measurement cycle");
    gen_cmd->add_flag("--syndrome-noise", gen.syndrome_noise, "flip syndrome bits too");
    gen_cmd->add_option("--n", gen.n, "number of records");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--canonical", gen.canonical,
                        "canonical label method: search, rank, exact, none");
    gen_cmd->add_option("--out", gen.out, "output JSONL path");

    auto* canon_cmd =
        app.add_subcommand("canonicalize", "rewrite a dataset's representative fields");
    std::string canon_in, canon_out, canon_method = "exact";
    canon_cmd->add_option("--in", canon_in, "input dataset")->required();
    canon_cmd->add_option("--out", canon_out, "output dataset")->required();
    canon_cmd->add_option("--method", canon_method, "search, rank, exact or phase");

    auto* train_cmd = app.add_subcommand("train", "fit the feed-forward decoder");
    TrainOpts tr;
    train_cmd->add_option("--config", tr.config, "key = value config file");
    train_cmd->add_option("--data", tr.data, "training dataset (JSONL)");
    train_cmd->add_option("--labels", tr.labels, "raw or canonical");
    train_cmd->add_option("--type", tr.type, "error type to decode: x or z");
    train_cmd->add_option("--hidden", tr.hidden, "hidden width (0 = default for d)");
    train_cmd->add_option("--epochs", tr.epochs, "training epochs");
    train_cmd->add_option("--batch", tr.batch, "mini-batch size");
    train_cmd->add_option("--lr", tr.lr, "learning rate");
    train_cmd->add_option("--instances", tr.instances, "independently seeded runs");
    train_cmd->add_option("--seed", tr.seed, "base model seed");
    train_cmd->add_option("--out", tr.out, "model output path (JSON)");

    auto* eval_cmd = app.add_subcommand("eval", "logical error rate at one operating point");
    EvalOpts ev;
    eval_cmd->add_option("--config", ev.config, "key = value config file");
    eval_cmd->add_option("--d", ev.d, "code distance");
    eval_cmd->add_option("--decoder", ev.decoder, "ffnn, mwpm or lookup");
    eval_cmd->add_option("--ffnn", ev.ffnn, "trained model path (decoder ffnn)");
    eval_cmd->add_option("--type", ev.type, "error type: x or z");
    eval_cmd->add_option("--model", ev.model, "noise model");
    eval_cmd->add_option("--p-step", ev.p_step, "per-step error probability");
    eval_cmd->add_option("--steps", ev.steps, "steps per measurement cycle");
    eval_cmd->add_flag("--syndrome-noise", ev.syndrome_noise, "flip syndrome bits too");
    eval_cmd->add_option("--trials", ev.trials, "Monte Carlo trials");
    eval_cmd->add_option("--seed", ev.seed, "RNG seed");
    eval_cmd->add_option("--workers", ev.workers, "worker threads");
    eval_cmd->add_option("--out-csv", ev.out_csv, "write the CSV here too");
    eval_cmd->add_option("--out-json", ev.out_json, "write a JSON summary");

    auto* sweep_cmd = app.add_subcommand("sweep", "rate curves over p, with thresholds");
    SweepOpts sw;
    sweep_cmd->add_option("--config", sw.config, "key = value config file");
    sweep_cmd->add_option("--ds", sw.ds, "comma list of distances");
    sweep_cmd->add_option("--decoder", sw.decoder, "ffnn, mwpm or lookup");
    sweep_cmd->add_option("--ffnn", sw.ffnn, "D:MODEL_PATH (repeatable)");
    sweep_cmd->add_option("--type", sw.type, "error type: x or z");
    sweep_cmd->add_option("--model", sw.model, "noise model");
    sweep_cmd->add_option("--p-steps", sw.p_steps, "comma list of per-step probabilities");
    sweep_cmd->add_option("--steps", sw.steps, "steps per measurement cycle");
    sweep_cmd->add_flag("--syndrome-noise", sw.syndrome_noise, "flip syndrome bits too");
    sweep_cmd->add_option("--trials", sw.trials, "Monte Carlo trials per point");
    sweep_cmd->add_option("--seed", sw.seed, "RNG seed");
    sweep_cmd->add_option("--workers", sw.workers, "worker threads");
    sweep_cmd->add_option("--out-csv", sw.out_csv, "CSV output path");
    sweep_cmd->add_option("--out-json", sw.out_json, "JSON summary path");
    sweep_cmd->add_option("--out-svg", sw.out_svg, "SVG chart path");

    auto* bench_cmd = app.add_subcommand("bench-gauge", "time the canonicalization methods");
    BenchOpts be;
    bench_cmd->add_option("--config", be.config, "key = value config file");
    bench_cmd->add_option("--d", be.d, "code distance");
    bench_cmd->add_option("--n", be.n, "batch size");
    bench_cmd->add_option("--methods", be.methods,
                          "comma list of search, rank, exact (default: all available)");
    bench_cmd->add_option("--q", be.q, "bit flip probability for the sampled batch");
    bench_cmd->add_option("--seed", be.seed, "RNG seed");
    bench_cmd->add_option("--out-csv", be.out_csv, "CSV output path");

    layout_cmd->callback([&] { run_layout(layout_d, layout_json); });
    gen_cmd->callback([&] { run_gen_data(gen_cmd, gen); });
    canon_cmd->callback([&] { run_canonicalize(canon_in, canon_out, canon_method); });
    train_cmd->callback([&] { run_train(train_cmd, tr); });
    eval_cmd->callback([&] { run_eval(eval_cmd, ev); });
    sweep_cmd->callback([&] { run_sweep(sweep_cmd, sw); });
    bench_cmd->callback([&] { run_bench(bench_cmd, be); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
