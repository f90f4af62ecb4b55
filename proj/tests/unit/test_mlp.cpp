#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "doctest.h"
#include "heavyhex/mlp.hpp"

using namespace heavyhex;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/heavyhex_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

/// Four 3-bit inputs with a fixed 2-bit target each; separable, so a small
/// net can drive the loss to zero.
void toy_task(Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    x.resize(4, 3);
    y.resize(4, 2);
    x << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1;
    y << 0, 0, 1, 0, 0, 1, 1, 1;
}

}  // namespace

TEST_SUITE("mlp") {

TEST_CASE("init shapes, determinism and validation") {
    const MlpModel m = mlp_init(4, 8, 3, 7);
    CHECK(m.w1.rows() == 8);
    CHECK(m.w1.cols() == 4);
    CHECK(m.w2.rows() == 3);
    CHECK(m.w2.cols() == 8);
    CHECK(m.b1.isZero());
    CHECK(m.b2.isZero());
    const double bound = std::sqrt(6.0 / (4 + 8));
    CHECK(m.w1.cwiseAbs().maxCoeff() <= bound);

    const MlpModel again = mlp_init(4, 8, 3, 7);
    CHECK(m.w1 == again.w1);
    CHECK(m.w2 == again.w2);
    const MlpModel other = mlp_init(4, 8, 3, 8);
    CHECK(m.w1 != other.w1);

    CHECK_THROWS_AS(mlp_init(0, 8, 3, 7), std::invalid_argument);
    CHECK_THROWS_AS(mlp_init(4, -1, 3, 7), std::invalid_argument);
}

TEST_CASE("default hidden widths") {
    CHECK(default_hidden_dim(3) == 128);
    CHECK(default_hidden_dim(5) == 256);
    CHECK(default_hidden_dim(7) == 512);
    CHECK(default_hidden_dim(9) == 512);
}

TEST_CASE("gradients match central differences") {
    MlpModel m = mlp_init(4, 2, 3, 11);
    Eigen::MatrixXd x(5, 4), y(5, 3);
    // Fixed quasi-random batch; labels in {0,1}.
    x << 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0;
    y << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1;
    // Shift weights off the relu kinks so the loss is smooth at the probe.
    m.b1.setConstant(0.05);

    const MlpGradients g = mlp_gradients(m, x, y);
    const double h = 1e-6;
    double max_err = 0.0;

    const auto probe = [&](double& w, double analytic) {
        const double saved = w;
        w = saved + h;
        const double up = mlp_loss(m, x, y);
        w = saved - h;
        const double down = mlp_loss(m, x, y);
        w = saved;
        const double numeric = (up - down) / (2 * h);
        const double scale = std::max({1.0, std::abs(numeric), std::abs(analytic)});
        max_err = std::max(max_err, std::abs(numeric - analytic) / scale);
    };

    for (int r = 0; r < m.w1.rows(); ++r)
        for (int c = 0; c < m.w1.cols(); ++c) probe(m.w1(r, c), g.w1(r, c));
    for (int r = 0; r < m.w2.rows(); ++r)
        for (int c = 0; c < m.w2.cols(); ++c) probe(m.w2(r, c), g.w2(r, c));
    for (int r = 0; r < m.b1.size(); ++r) probe(m.b1(r), g.b1(r));
    for (int r = 0; r < m.b2.size(); ++r) probe(m.b2(r), g.b2(r));

    CHECK(max_err < 1e-4);
}

TEST_CASE("training memorizes a separable toy task") {
    Eigen::MatrixXd x, y;
    toy_task(x, y);
    MlpModel m = mlp_init(3, 16, 2, 5);
    TrainConfig cfg;
    cfg.batch_size = 4;
    cfg.epochs = 1500;
    cfg.learning_rate = 0.5;
    const std::vector<double> trace = mlp_train(m, x, y, cfg);

    REQUIRE(trace.size() == 1500);
    CHECK(trace.back() < 0.01);
    CHECK(trace.back() < trace.front());

    const Eigen::MatrixXd p = mlp_forward(m, x);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(p(r, c) - y(r, c)) < 0.5);
}

TEST_CASE("training is seed deterministic") {
    Eigen::MatrixXd x, y;
    toy_task(x, y);
    TrainConfig cfg;
    cfg.batch_size = 2;
    cfg.epochs = 50;
    cfg.learning_rate = 0.3;

    MlpModel a = mlp_init(3, 8, 2, 9);
    MlpModel b = mlp_init(3, 8, 2, 9);
    const auto ta = mlp_train(a, x, y, cfg);
    const auto tb = mlp_train(b, x, y, cfg);
    CHECK(a.w1 == b.w1);
    CHECK(a.w2 == b.w2);
    CHECK(ta == tb);

    MlpModel c = mlp_init(3, 8, 2, 10);
    mlp_train(c, x, y, cfg);
    CHECK(a.w1 != c.w1);
}

TEST_CASE("batch size larger than the dataset degenerates to full batch") {
    Eigen::MatrixXd x, y;
    toy_task(x, y);
    MlpModel m = mlp_init(3, 8, 2, 1);
    TrainConfig cfg;
    cfg.batch_size = 1000;
    cfg.epochs = 10;
    cfg.learning_rate = 0.1;
    CHECK_NOTHROW(mlp_train(m, x, y, cfg));
}

TEST_CASE("a non-finite loss raises instead of corrupting the model") {
    Eigen::MatrixXd x, y;
    toy_task(x, y);
    MlpModel m = mlp_init(3, 8, 2, 2);
    // Logits this large overflow the summed loss on the zero-labelled bits.
    m.b2.setConstant(1.7e308);
    TrainConfig cfg;
    cfg.batch_size = 4;
    cfg.epochs = 5;
    cfg.learning_rate = 0.1;
    CHECK_THROWS_WITH_AS(mlp_train(m, x, y, cfg), doctest::Contains("diverged"),
                         std::runtime_error);
}

TEST_CASE("training rejects bad arguments") {
    Eigen::MatrixXd x, y;
    toy_task(x, y);
    MlpModel m = mlp_init(3, 8, 2, 3);
    TrainConfig cfg;
    cfg.batch_size = 0;
    CHECK_THROWS_AS(mlp_train(m, x, y, cfg), std::invalid_argument);
    cfg.batch_size = 4;
    cfg.learning_rate = -1.0;
    CHECK_THROWS_AS(mlp_train(m, x, y, cfg), std::invalid_argument);

    Eigen::MatrixXd wrong(4, 5);
    wrong.setZero();
    cfg.learning_rate = 0.1;
    CHECK_THROWS_AS(mlp_train(m, wrong, y, cfg), std::invalid_argument);
}

TEST_CASE("prediction thresholds at one half and applies the canonicalizer") {
    MlpModel m = mlp_init(2, 4, 3, 4);
    m.w1.setZero();
    m.b1.setZero();
    m.w2.setZero();
    // Bias-only outputs: sigmoid(2) > 0.5, sigmoid(-2) < 0.5, sigmoid(3) > 0.5.
    m.b2 << 2.0, -2.0, 3.0;

    BitVec in(2);
    CHECK(mlp_predict(m, in).str() == "101");

    const Canonicalizer flip_first = [](const BitVec& v) {
        BitVec out = v;
        out.flip(0);
        return out;
    };
    CHECK(mlp_predict(m, in, flip_first).str() == "001");

    BitVec wrong(3);
    CHECK_THROWS_AS(mlp_predict(m, wrong), std::invalid_argument);
}

TEST_CASE("dataset matrices expose the requested columns") {
    const CodeLayout layout = build_layout(3);
    DatasetHeader h;
    h.d = 3;
    h.noise.model = NoiseModel::depolarizing;
    h.noise.p_step = 0.01;
    h.n = 40;
    h.seed = 17;
    const Dataset ds = generate_dataset(layout, h);

    const Eigen::MatrixXd z = dataset_inputs(ds, InputKind::syndrome_z);
    const Eigen::MatrixXd x = dataset_inputs(ds, InputKind::syndrome_x);
    const Eigen::MatrixXd zx = dataset_inputs(ds, InputKind::syndrome_zx);
    CHECK(z.rows() == 40);
    CHECK(z.cols() == 4);
    CHECK(x.cols() == 2);
    CHECK(zx.cols() == 6);

    for (int r = 0; r < 40; ++r) {
        for (int c = 0; c < 4; ++c) {
            CHECK(z(r, c) == (ds.records[r].syndrome_z.get(c) ? 1.0 : 0.0));
            CHECK(zx(r, c) == z(r, c));
        }
        for (int c = 0; c < 2; ++c) CHECK(zx(r, 4 + c) == x(r, c));
    }

    const Eigen::MatrixXd raw = dataset_labels(ds, LabelKind::error_x);
    const Eigen::MatrixXd canon = dataset_labels(ds, LabelKind::canon_x);
    CHECK(raw.cols() == 9);
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 9; ++c) {
            CHECK(raw(r, c) == (ds.records[r].error_x.get(c) ? 1.0 : 0.0));
            CHECK(canon(r, c) == (ds.records[r].canon_x.get(c) ? 1.0 : 0.0));
        }
}

TEST_CASE("input and label kinds for each decoding task") {
    CHECK(input_kind_for(NoiseModel::bitflip) == InputKind::syndrome_z);
    CHECK(input_kind_for(NoiseModel::phaseflip) == InputKind::syndrome_x);
    CHECK(input_kind_for(NoiseModel::depolarizing) == InputKind::syndrome_zx);
    CHECK(label_kind_for(ErrorType::X, true) == LabelKind::canon_x);
    CHECK(label_kind_for(ErrorType::X, false) == LabelKind::error_x);
    CHECK(label_kind_for(ErrorType::Z, true) == LabelKind::canon_z);
    CHECK(label_kind_for(ErrorType::Z, false) == LabelKind::error_z);
}

TEST_CASE("model save and load round trip exactly") {
    MlpModel m = mlp_init(4, 6, 9, 21);
    m.input = InputKind::syndrome_zx;
    m.target = LabelKind::canon_z;
    m.note = "hidden = 6\nseed = 21";
    m.b1.setRandom();
    m.b2.setRandom();

    TempFile f("model.json");
    save_model(f.path, m);
    const MlpModel back = load_model(f.path);
    CHECK(back.in_dim == 4);
    CHECK(back.hidden_dim == 6);
    CHECK(back.out_dim == 9);
    CHECK(back.seed == 21);
    CHECK(back.input == InputKind::syndrome_zx);
    CHECK(back.target == LabelKind::canon_z);
    CHECK(back.note == m.note);
    CHECK(back.w1 == m.w1);
    CHECK(back.b1 == m.b1);
    CHECK(back.w2 == m.w2);
    CHECK(back.b2 == m.b2);

    CHECK_THROWS_AS(load_model("/tmp/heavyhex_missing_model.json"), std::runtime_error);
}

TEST_CASE("kind names round trip") {
    for (const InputKind k :
         {InputKind::syndrome_z, InputKind::syndrome_x, InputKind::syndrome_zx})
        CHECK(input_kind_from_string(to_string(k)) == k);
    for (const LabelKind k : {LabelKind::error_x, LabelKind::error_z, LabelKind::canon_x,
                              LabelKind::canon_z})
        CHECK(label_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(input_kind_from_string("bits"), std::invalid_argument);
    CHECK_THROWS_AS(label_kind_from_string("clean"), std::invalid_argument);
}

}  // TEST_SUITE
