#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heavyhex/dataset.hpp"

namespace heavyhex {

/// Which syndrome bits feed the network.
enum class InputKind { syndrome_z, syndrome_x, syndrome_zx };
/// Which per-qubit bit pattern it learns to emit.
enum class LabelKind { error_x, error_z, canon_x, canon_z };

std::string to_string(InputKind kind);
std::string to_string(LabelKind kind);
InputKind input_kind_from_string(const std::string& name);
LabelKind label_kind_from_string(const std::string& name);

/// One-hidden-layer feed-forward network: relu(W1 s + b1) into a sigmoid
/// output per qubit bit.
struct MlpModel {
    int in_dim = 0;
    int hidden_dim = 0;
    int out_dim = 0;
    std::uint64_t seed = 0;
    InputKind input = InputKind::syndrome_z;
    LabelKind target = LabelKind::canon_x;
    std::string note;  ///< free-form provenance (resolved training config)
    Eigen::MatrixXd w1;  ///< hidden_dim x in_dim
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;  ///< out_dim x hidden_dim
    Eigen::VectorXd b2;
};

/// Uniform(+-sqrt(6/(fan_in+fan_out))) weights, zero biases, deterministic
/// in the seed.
MlpModel mlp_init(int in_dim, int hidden_dim, int out_dim, std::uint64_t seed);

/// Default hidden width per distance: 128 (d=3), 256 (d=5), 512 (d>=7).
int default_hidden_dim(int d);

struct TrainConfig {
    int batch_size = 10000;
    int epochs = 1000;
    double learning_rate = 0.01;
    int instances = 5;
};

/// Output probabilities for a batch of inputs (rows).
Eigen::MatrixXd mlp_forward(const MlpModel& m, const Eigen::MatrixXd& inputs);

/// Mean per-bit binary cross-entropy of the model on (inputs, labels).
double mlp_loss(const MlpModel& m, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& labels);

struct MlpGradients {
    Eigen::MatrixXd w1, w2;
    Eigen::VectorXd b1, b2;
};

/// Exact gradient of mlp_loss with respect to every parameter.
MlpGradients mlp_gradients(const MlpModel& m, const Eigen::MatrixXd& inputs,
                           const Eigen::MatrixXd& labels);

/// Mini-batch SGD on the mean per-bit binary cross-entropy.  Rows are
/// reshuffled every epoch from a stream derived of the model seed; training
/// is single-threaded and deterministic.  Returns the per-epoch mean batch
/// loss and throws if the loss ever turns non-finite.
std::vector<double> mlp_train(MlpModel& m, const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& labels, const TrainConfig& cfg);

using Canonicalizer = std::function<BitVec(const BitVec&)>;

/// Threshold the output probabilities at 0.5.  When a canonicalizer is
/// given, the thresholded pattern is passed through it.
BitVec mlp_predict(const MlpModel& m, const BitVec& syndrome_bits,
                   const Canonicalizer& canonicalizer = nullptr);

/// Dataset columns as dense matrices (one row per record, one column per bit).
Eigen::MatrixXd dataset_inputs(const Dataset& ds, InputKind kind);
Eigen::MatrixXd dataset_labels(const Dataset& ds, LabelKind kind);

/// The input/label combination a given noise model calls for when decoding
/// errors of the given type.
InputKind input_kind_for(NoiseModel model);
LabelKind label_kind_for(ErrorType type, bool canonical);

void save_model(const std::string& path, const MlpModel& m);
MlpModel load_model(const std::string& path);

}  // namespace heavyhex
