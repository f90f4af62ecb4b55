#include "heavyhex/mlp.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "heavyhex/rng.hpp"

namespace heavyhex {

namespace {

void check_dims(int in_dim, int hidden_dim, int out_dim) {
    if (in_dim < 1 || hidden_dim < 1 || out_dim < 1)
        throw std::invalid_argument("model dimensions must be positive");
}

// Numerically safe softplus, log(1 + e^z).
double softplus(double z) {
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

Eigen::MatrixXd logits_hidden(const MlpModel& m, const Eigen::MatrixXd& inputs) {
    return (inputs * m.w1.transpose()).rowwise() + m.b1.transpose();
}

void check_batch(const MlpModel& m, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& labels) {
    if (inputs.cols() != m.in_dim)
        throw std::invalid_argument("input width " + std::to_string(inputs.cols()) +
                                    " does not match in_dim " + std::to_string(m.in_dim));
    if (labels.cols() != m.out_dim || labels.rows() != inputs.rows())
        throw std::invalid_argument("label matrix shape does not match the model/batch");
}

}  // namespace

std::string to_string(InputKind kind) {
    switch (kind) {
        case InputKind::syndrome_z: return "syndrome_z";
        case InputKind::syndrome_x: return "syndrome_x";
        case InputKind::syndrome_zx: return "syndrome_zx";
    }
    throw std::logic_error("unreachable input kind");
}

std::string to_string(LabelKind kind) {
    switch (kind) {
        case LabelKind::error_x: return "error_x";
        case LabelKind::error_z: return "error_z";
        case LabelKind::canon_x: return "canon_x";
        case LabelKind::canon_z: return "canon_z";
    }
    throw std::logic_error("unreachable label kind");
}

InputKind input_kind_from_string(const std::string& name) {
    if (name == "syndrome_z") return InputKind::syndrome_z;
    if (name == "syndrome_x") return InputKind::syndrome_x;
    if (name == "syndrome_zx") return InputKind::syndrome_zx;
    throw std::invalid_argument("unknown input kind '" + name + "'");
}

LabelKind label_kind_from_string(const std::string& name) {
    if (name == "error_x") return LabelKind::error_x;
    if (name == "error_z") return LabelKind::error_z;
    if (name == "canon_x") return LabelKind::canon_x;
    if (name == "canon_z") return LabelKind::canon_z;
    throw std::invalid_argument("unknown label kind '" + name + "'");
}

MlpModel mlp_init(int in_dim, int hidden_dim, int out_dim, std::uint64_t seed) {
    check_dims(in_dim, hidden_dim, out_dim);
    MlpModel m;
    m.in_dim = in_dim;
    m.hidden_dim = hidden_dim;
    m.out_dim = out_dim;
    m.seed = seed;
    Rng rng(seed);
    const auto uniform_pm = [&rng](double limit) { return (2 * rng.uniform() - 1) * limit; };

    const double limit1 = std::sqrt(6.0 / (in_dim + hidden_dim));
    m.w1.resize(hidden_dim, in_dim);
    for (int r = 0; r < hidden_dim; ++r)
        for (int c = 0; c < in_dim; ++c) m.w1(r, c) = uniform_pm(limit1);
    m.b1 = Eigen::VectorXd::Zero(hidden_dim);

    const double limit2 = std::sqrt(6.0 / (hidden_dim + out_dim));
    m.w2.resize(out_dim, hidden_dim);
    for (int r = 0; r < out_dim; ++r)
        for (int c = 0; c < hidden_dim; ++c) m.w2(r, c) = uniform_pm(limit2);
    m.b2 = Eigen::VectorXd::Zero(out_dim);
    return m;
}

int default_hidden_dim(int d) {
    if (d <= 3) return 128;
    if (d <= 5) return 256;
    return 512;
}

Eigen::MatrixXd mlp_forward(const MlpModel& m, const Eigen::MatrixXd& inputs) {
    if (inputs.cols() != m.in_dim)
        throw std::invalid_argument("input width does not match in_dim");
    const Eigen::MatrixXd h = logits_hidden(m, inputs).cwiseMax(0.0);
    Eigen::MatrixXd z2 = (h * m.w2.transpose()).rowwise() + m.b2.transpose();
    return z2.unaryExpr([](double z) { return 1.0 / (1.0 + std::exp(-z)); });
}

double mlp_loss(const MlpModel& m, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& labels) {
    check_batch(m, inputs, labels);
    const Eigen::MatrixXd h = logits_hidden(m, inputs).cwiseMax(0.0);
    const Eigen::MatrixXd z2 = ((h * m.w2.transpose()).rowwise() + m.b2.transpose());
    // Per-bit cross entropy from the logits: softplus(z) - y z.
    double total = 0.0;
    for (Eigen::Index r = 0; r < z2.rows(); ++r)
        for (Eigen::Index c = 0; c < z2.cols(); ++c)
            total += softplus(z2(r, c)) - labels(r, c) * z2(r, c);
    return total / (static_cast<double>(z2.rows()) * static_cast<double>(z2.cols()));
}

MlpGradients mlp_gradients(const MlpModel& m, const Eigen::MatrixXd& inputs,
                           const Eigen::MatrixXd& labels) {
    check_batch(m, inputs, labels);
    const Eigen::MatrixXd z1 = logits_hidden(m, inputs);
    const Eigen::MatrixXd h = z1.cwiseMax(0.0);
    const Eigen::MatrixXd z2 = (h * m.w2.transpose()).rowwise() + m.b2.transpose();
    const Eigen::MatrixXd probs =
        z2.unaryExpr([](double z) { return 1.0 / (1.0 + std::exp(-z)); });

    const double scale = 1.0 / (static_cast<double>(z2.rows()) * static_cast<double>(z2.cols()));
    const Eigen::MatrixXd dz2 = (probs - labels) * scale;          // N x out
    const Eigen::MatrixXd dh = dz2 * m.w2;                         // N x hidden
    const Eigen::MatrixXd dz1 =
        dh.cwiseProduct((z1.array() > 0.0).cast<double>().matrix());

    MlpGradients g;
    g.w2 = dz2.transpose() * h;
    g.b2 = dz2.colwise().sum().transpose();
    g.w1 = dz1.transpose() * inputs;
    g.b1 = dz1.colwise().sum().transpose();
    return g;
}

std::vector<double> mlp_train(MlpModel& m, const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& labels, const TrainConfig& cfg) {
    check_batch(m, inputs, labels);
    if (cfg.batch_size < 1 || cfg.epochs < 0)
        throw std::invalid_argument("batch_size must be positive and epochs nonnegative");
    if (!(cfg.learning_rate >= 0.0))
        throw std::invalid_argument("learning_rate must be nonnegative");

    const Eigen::Index n = inputs.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(m.seed, 0x5470u);

    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(cfg.epochs));
    Eigen::MatrixXd bx, by;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(shuffle_rng.below(i));
            std::swap(order[i - 1], order[j]);
        }

        double epoch_loss = 0.0;
        int batches = 0;
        for (Eigen::Index start = 0; start < n; start += cfg.batch_size) {
            const Eigen::Index count = std::min<Eigen::Index>(cfg.batch_size, n - start);
            bx.resize(count, m.in_dim);
            by.resize(count, m.out_dim);
            for (Eigen::Index r = 0; r < count; ++r) {
                bx.row(r) = inputs.row(order[static_cast<std::size_t>(start + r)]);
                by.row(r) = labels.row(order[static_cast<std::size_t>(start + r)]);
            }
            epoch_loss += mlp_loss(m, bx, by);
            ++batches;
            const MlpGradients g = mlp_gradients(m, bx, by);
            m.w1 -= cfg.learning_rate * g.w1;
            m.b1 -= cfg.learning_rate * g.b1;
            m.w2 -= cfg.learning_rate * g.w2;
            m.b2 -= cfg.learning_rate * g.b2;
        }

        epoch_loss /= batches;
        if (!std::isfinite(epoch_loss))
            throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                     std::to_string(epoch) + " (reduce the learning rate)");
        trace.push_back(epoch_loss);
    }
    return trace;
}

BitVec mlp_predict(const MlpModel& m, const BitVec& syndrome_bits,
                   const Canonicalizer& canonicalizer) {
    if (syndrome_bits.size() != static_cast<std::size_t>(m.in_dim))
        throw std::invalid_argument("syndrome length does not match in_dim");
    Eigen::MatrixXd x(1, m.in_dim);
    for (int i = 0; i < m.in_dim; ++i) x(0, i) = syndrome_bits.get(static_cast<std::size_t>(i)) ? 1.0 : 0.0;
    const Eigen::MatrixXd probs = mlp_forward(m, x);
    BitVec out(static_cast<std::size_t>(m.out_dim));
    for (int k = 0; k < m.out_dim; ++k)
        if (probs(0, k) > 0.5) out.set(static_cast<std::size_t>(k));
    return canonicalizer ? canonicalizer(out) : out;
}

namespace {

void fill_bits(Eigen::MatrixXd& mat, Eigen::Index row, const BitVec& bits, Eigen::Index offset) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        mat(row, offset + static_cast<Eigen::Index>(i)) = bits.get(i) ? 1.0 : 0.0;
}

}  // namespace

Eigen::MatrixXd dataset_inputs(const Dataset& ds, InputKind kind) {
    if (ds.records.empty()) throw std::invalid_argument("dataset has no records");
    const Eigen::Index nz = static_cast<Eigen::Index>(ds.records[0].syndrome_z.size());
    const Eigen::Index nx = static_cast<Eigen::Index>(ds.records[0].syndrome_x.size());
    const Eigen::Index cols = kind == InputKind::syndrome_z   ? nz
                              : kind == InputKind::syndrome_x ? nx
                                                              : nz + nx;
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ds.records.size()), cols);
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        switch (kind) {
            case InputKind::syndrome_z: fill_bits(out, row, ds.records[r].syndrome_z, 0); break;
            case InputKind::syndrome_x: fill_bits(out, row, ds.records[r].syndrome_x, 0); break;
            case InputKind::syndrome_zx:
                fill_bits(out, row, ds.records[r].syndrome_z, 0);
                fill_bits(out, row, ds.records[r].syndrome_x, nz);
                break;
        }
    }
    return out;
}

Eigen::MatrixXd dataset_labels(const Dataset& ds, LabelKind kind) {
    if (ds.records.empty()) throw std::invalid_argument("dataset has no records");
    const Eigen::Index cols = static_cast<Eigen::Index>(ds.records[0].error_x.size());
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ds.records.size()), cols);
    for (std::size_t r = 0; r < ds.records.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        const DatasetRecord& rec = ds.records[r];
        switch (kind) {
            case LabelKind::error_x: fill_bits(out, row, rec.error_x, 0); break;
            case LabelKind::error_z: fill_bits(out, row, rec.error_z, 0); break;
            case LabelKind::canon_x: fill_bits(out, row, rec.canon_x, 0); break;
            case LabelKind::canon_z: fill_bits(out, row, rec.canon_z, 0); break;
        }
    }
    return out;
}

InputKind input_kind_for(NoiseModel model) {
    switch (model) {
        case NoiseModel::bitflip: return InputKind::syndrome_z;
        case NoiseModel::phaseflip: return InputKind::syndrome_x;
        case NoiseModel::depolarizing: return InputKind::syndrome_zx;
    }
    throw std::logic_error("unreachable noise model");
}

LabelKind label_kind_for(ErrorType type, bool canonical) {
    if (type == ErrorType::X) return canonical ? LabelKind::canon_x : LabelKind::error_x;
    return canonical ? LabelKind::canon_z : LabelKind::error_z;
}

void save_model(const std::string& path, const MlpModel& m) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["in_dim"] = m.in_dim;
    j["hidden_dim"] = m.hidden_dim;
    j["out_dim"] = m.out_dim;
    j["seed"] = m.seed;
    j["input"] = to_string(m.input);
    j["target"] = to_string(m.target);
    j["note"] = m.note;
    const auto dump = [](const auto& mat) {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(mat.size()));
        for (Eigen::Index r = 0; r < mat.rows(); ++r)
            for (Eigen::Index c = 0; c < mat.cols(); ++c) flat.push_back(mat(r, c));
        return flat;
    };
    j["w1"] = dump(m.w1);
    j["b1"] = dump(m.b1);
    j["w2"] = dump(m.w2);
    j["b2"] = dump(m.b2);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": malformed model file: " + e.what());
    }
    MlpModel m;
    try {
        if (j.at("format_version").get<int>() != 1)
            throw std::runtime_error("unsupported model format_version");
        m.in_dim = j.at("in_dim").get<int>();
        m.hidden_dim = j.at("hidden_dim").get<int>();
        m.out_dim = j.at("out_dim").get<int>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.input = input_kind_from_string(j.at("input").get<std::string>());
        m.target = label_kind_from_string(j.at("target").get<std::string>());
        if (j.contains("note")) m.note = j.at("note").get<std::string>();
        check_dims(m.in_dim, m.hidden_dim, m.out_dim);
        const auto fill = [&j](const char* key, auto& mat, Eigen::Index rows, Eigen::Index cols) {
            const std::vector<double> flat = j.at(key).get<std::vector<double>>();
            if (flat.size() != static_cast<std::size_t>(rows * cols))
                throw std::runtime_error(std::string("weight array '") + key + "' has wrong length");
            mat.resize(rows, cols);
            std::size_t k = 0;
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = flat[k++];
        };
        fill("w1", m.w1, m.hidden_dim, m.in_dim);
        fill("b1", m.b1, m.hidden_dim, 1);
        fill("w2", m.w2, m.out_dim, m.hidden_dim);
        fill("b2", m.b2, m.out_dim, 1);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": bad model file: " + e.what());
    }
    return m;
}

}  // namespace heavyhex
