// Release gate for the workbench: one self-contained check per criterion,
// one PASS/FAIL line each, nonzero exit when any check fails.  The network
// training checks dominate the runtime (around a quarter of an hour).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "heavyhex/dataset.hpp"
#include "heavyhex/evaluation.hpp"
#include "heavyhex/gauge.hpp"
#include "heavyhex/matching.hpp"
#include "heavyhex/mlp.hpp"
#include "heavyhex/noise.hpp"
#include "heavyhex/rng.hpp"

using namespace heavyhex;

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(5);
    ss << v;
    return ss.str();
}

BitVec bits_of(std::uint64_t key, std::size_t n) {
    BitVec e(n);
    for (std::size_t k = 0; k < n; ++k)
        if (key >> k & 1) e.set(k);
    return e;
}

BitVec random_error(std::size_t n, Rng& rng, double q) {
    BitVec e(n);
    for (std::size_t k = 0; k < n; ++k)
        if (rng.bernoulli(q)) e.set(k);
    return e;
}

BitVec random_combination(const std::vector<BitVec>& gens, Rng& rng) {
    BitVec g(gens[0].size());
    for (const auto& gen : gens)
        if (rng.bernoulli(0.5)) g ^= gen;
    return g;
}

/// Per-step probability that accumulates to the per-cycle value q over
/// 11 steps.
double step_prob(double q) { return -std::expm1(std::log1p(-q) / 11.0); }

bool ci_overlap(const CurvePoint& a, const CurvePoint& b) {
    return a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi;
}

// ---------------------------------------------------------------------------

bool criterion_counts(std::string& detail) {
    const CodeLayout d5 = build_layout(5);
    const CodeLayout d3 = build_layout(3);
    const bool ok = d5.x_gauge_generators.size() == 12 && d5.z_gauge_generators.size() == 20 &&
                    d5.z_stabilizers.size() == 12 && d5.x_stabilizers.size() == 4 &&
                    d3.x_gauge_generators.size() == 4 && d3.z_gauge_generators.size() == 6 &&
                    d3.z_stabilizers.size() == 4 && d3.x_stabilizers.size() == 2;
    detail = "d=5 counts " + std::to_string(d5.x_gauge_generators.size()) + "/" +
             std::to_string(d5.z_gauge_generators.size()) + "/" +
             std::to_string(d5.z_stabilizers.size()) + "/" +
             std::to_string(d5.x_stabilizers.size()) + ", d=3 counts " +
             std::to_string(d3.x_gauge_generators.size()) + "/" +
             std::to_string(d3.z_gauge_generators.size()) + "/" +
             std::to_string(d3.z_stabilizers.size()) + "/" +
             std::to_string(d3.x_stabilizers.size());
    return ok;
}

bool criterion_class_counts(std::string& detail) {
    const CodeLayout layout = build_layout(3);
    const GaugeBasis gb = x_gauge_basis(layout);
    std::unordered_set<BitVec, BitVecHash> x_reps, z_reps;
    for (std::uint64_t key = 0; key < 512; ++key) {
        const BitVec e = bits_of(key, 9);
        x_reps.insert(canonical_bitflip_exact(e, gb));
        z_reps.insert(canonical_phaseflip(e, 3));
    }
    detail = std::to_string(x_reps.size()) + " bit-flip classes, " +
             std::to_string(z_reps.size()) + " phase-flip classes";
    return x_reps.size() == 32 && z_reps.size() == 8;
}

bool criterion_method_agreement(std::string& detail) {
    const CodeLayout d3 = build_layout(3);
    const GaugeBasis gb3 = x_gauge_basis(d3);
    std::vector<ErrorString> all;
    for (std::uint64_t key = 0; key < 512; ++key) all.push_back(bits_of(key, 9));
    const auto ranked3 = canonical_bitflip_rank(all, d3, gb3, true);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const BitVec exact = canonical_bitflip_exact(all[i], gb3);
        if (canonical_bitflip_search(all[i], gb3) != exact || ranked3[i] != exact) {
            detail = "disagreement on d=3 input " + all[i].str();
            return false;
        }
    }

    const CodeLayout d5 = build_layout(5);
    const GaugeBasis gb5 = x_gauge_basis(d5);
    Rng rng(811, 0);
    std::vector<ErrorString> sample;
    for (int i = 0; i < 1000; ++i) sample.push_back(random_error(25, rng, 0.5));
    const auto ranked5 = canonical_bitflip_rank(sample, d5, gb5, true);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const BitVec exact = canonical_bitflip_exact(sample[i], gb5);
        if (canonical_bitflip_search(sample[i], gb5) != exact || ranked5[i] != exact) {
            detail = "disagreement on d=5 input " + sample[i].str();
            return false;
        }
    }
    detail = "search, rank and exact agree on 512 d=3 and 1000 random d=5 inputs";
    return true;
}

bool criterion_worked_equivalences(std::string& detail) {
    const CodeLayout layout = build_layout(3);
    const GaugeBasis gb = x_gauge_basis(layout);
    const BitVec x478 = canonical_bitflip_exact(BitVec::from_indices(9, {3, 6, 7}), gb);
    const BitVec x5 = canonical_bitflip_exact(BitVec::from_indices(9, {4}), gb);
    const BitVec z7 = canonical_phaseflip(BitVec::from_indices(9, {6}), 3);
    const BitVec z1 = canonical_phaseflip(BitVec::from_indices(9, {0}), 3);
    detail = "X{4,7,8} -> " + x478.str() + ", X{5} -> " + x5.str() + "; Z{7} -> " + z7.str() +
             ", Z{1} -> " + z1.str();
    return x478 == x5 && x478.str() == "000010000" && z7 == z1 && z7.str() == "100000000";
}

bool criterion_gauge_invariance(std::string& detail) {
    for (const int d : {3, 5, 7}) {
        const CodeLayout layout = build_layout(d);
        Rng rng(900 + d, 0);
        for (int trial = 0; trial < 10000; ++trial) {
            const BitVec ex = random_error(layout.n_qubits, rng, 0.3);
            const BitVec gx = random_combination(layout.x_gauge_generators, rng);
            if (syndrome_bitflip(layout, ex ^ gx) != syndrome_bitflip(layout, ex)) {
                detail = "bit-flip syndrome changed under a gauge product at d=" +
                         std::to_string(d);
                return false;
            }
            const BitVec ez = random_error(layout.n_qubits, rng, 0.3);
            const BitVec gz = random_combination(layout.z_gauge_generators, rng);
            if (syndrome_phaseflip(layout, ez ^ gz) != syndrome_phaseflip(layout, ez)) {
                detail = "phase-flip syndrome changed under a gauge product at d=" +
                         std::to_string(d);
                return false;
            }
        }
    }
    detail = "10000 random (error, gauge product) pairs at each of d=3,5,7";
    return true;
}

bool criterion_gradient_check(std::string& detail) {
    MlpModel m = mlp_init(4, 2, 3, 11);
    m.b1.setConstant(0.05);  // keep the probe off the relu kinks
    Eigen::MatrixXd x(5, 4), y(5, 3);
    x << 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0;
    y << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1;

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

    detail = "max relative gradient error " + fmt(max_err) + " on a 4-2-3 model";
    return max_err < 1e-4;
}

bool criterion_cycle_prob(std::string& detail) {
    const double q = effective_cycle_prob(0.001, 11);
    detail = "effective_cycle_prob(0.001, 11) = " + fmt(q);
    return std::abs(q - 0.010945) <= 1e-6;
}

bool criterion_bench_direction(std::string& detail) {
    const CodeLayout layout = build_layout(5);
    const auto rows = bench_gauge(layout, 10000, {"search", "rank"}, 0.05, 4242);
    const double search_s = rows[0].seconds;
    const double rank_s = rows[1].seconds;
    detail = "d=5, N=10000: search " + fmt(search_s) + " s, rank " + fmt(rank_s) + " s";
    return rank_s < search_s;
}

// -- criteria 9 and 10: network training ------------------------------------

struct TrainedModel {
    MlpModel model;
    double final_loss = 0.0;
};

TrainedModel train_best_of(const Dataset& ds, LabelKind target, std::uint64_t seed0,
                           const std::string& tag) {
    const Eigen::MatrixXd x = dataset_inputs(ds, InputKind::syndrome_z);
    const Eigen::MatrixXd y = dataset_labels(ds, target);
    TrainConfig cfg;
    cfg.batch_size = 200;
    cfg.epochs = 200;
    cfg.learning_rate = 1.0;
    cfg.instances = 5;

    TrainedModel best;
    for (int k = 0; k < cfg.instances; ++k) {
        MlpModel m = mlp_init(int(x.cols()), default_hidden_dim(ds.header.d), int(y.cols()),
                              seed0 + std::uint64_t(k));
        m.input = InputKind::syndrome_z;
        m.target = target;
        const std::vector<double> trace = mlp_train(m, x, y, cfg);
        std::cerr << "#   " << tag << " instance " << k << ": final loss "
                  << trace.back() << "\n";
        if (k == 0 || trace.back() < best.final_loss) {
            best.model = std::move(m);
            best.final_loss = trace.back();
        }
    }
    return best;
}

NoiseConfig bitflip_at(double q) {
    NoiseConfig noise;
    noise.model = NoiseModel::bitflip;
    noise.p_step = step_prob(q);
    noise.steps = 11;
    return noise;
}

Dataset training_set(const CodeLayout& layout, double q, std::uint64_t seed) {
    DatasetHeader h;
    h.d = layout.d;
    h.noise = bitflip_at(q);
    h.n = 100000;
    h.seed = seed;
    h.canonical = CanonicalMethod::exact;
    return generate_dataset(layout, h);
}

struct OperatingPoint {
    double q = 0.0;
    CurvePoint mwpm, lookup, canon, raw;
};

bool criterion_decoder_ordering(std::string& detail, std::vector<OperatingPoint>& points_out,
                                MlpModel& canon_02_out) {
    const CodeLayout layout = build_layout(3);
    const long trials = 100000;
    const int workers = 4;

    bool a_ok = true, b_ok = true, c_ok = true;
    std::ostringstream note;

    const double qs[2] = {0.02, 0.05};
    const std::uint64_t data_seeds[2] = {101, 102};
    const std::uint64_t train_seeds[2][2] = {{3100, 3200}, {3300, 3400}};
    const std::uint64_t eval_seeds[2] = {9102, 9105};

    for (int i = 0; i < 2; ++i) {
        const double q = qs[i];
        std::cerr << "# criterion 9: q = " << q << ", generating 100000 training records\n";
        const Dataset ds = training_set(layout, q, data_seeds[i]);

        const TrainedModel canon =
            train_best_of(ds, LabelKind::canon_x, train_seeds[i][0], "canonical");
        const TrainedModel raw =
            train_best_of(ds, LabelKind::error_x, train_seeds[i][1], "raw");
        if (i == 0) canon_02_out = canon.model;

        const NoiseConfig noise = bitflip_at(q);
        const FfnnDecoder canon_dec(layout, canon.model);
        const FfnnDecoder raw_dec(layout, raw.model);
        const MwpmDecoder mwpm_dec(layout, ErrorType::X);
        const TableDecoder lookup_dec(layout, ErrorType::X, noise.effective_prob());

        OperatingPoint pt;
        pt.q = q;
        pt.mwpm = logical_error_rate(mwpm_dec, layout, noise, trials, eval_seeds[i], workers);
        pt.lookup =
            logical_error_rate(lookup_dec, layout, noise, trials, eval_seeds[i], workers);
        pt.canon =
            logical_error_rate(canon_dec, layout, noise, trials, eval_seeds[i], workers);
        pt.raw = logical_error_rate(raw_dec, layout, noise, trials, eval_seeds[i], workers);
        points_out.push_back(pt);

        note << " [q=" << q << ": mwpm " << fmt(pt.mwpm.rate) << ", lookup "
             << fmt(pt.lookup.rate) << ", canonical ffnn " << fmt(pt.canon.rate)
             << ", raw ffnn " << fmt(pt.raw.rate) << "]";

        a_ok = a_ok && pt.canon.failures <= pt.raw.failures;
        const auto beats_or_ties = [&](const CurvePoint& x) {
            return x.failures <= pt.mwpm.failures || ci_overlap(x, pt.mwpm);
        };
        b_ok = b_ok && beats_or_ties(pt.canon) && beats_or_ties(pt.raw) &&
               beats_or_ties(pt.lookup);
        c_ok = c_ok && pt.lookup.failures <= pt.mwpm.failures &&
               pt.lookup.failures <= pt.canon.failures && pt.lookup.failures <= pt.raw.failures;
    }

    std::ostringstream d;
    d << "(a) canonical <= raw: " << (a_ok ? "yes" : "NO")
      << "; (b) ffnn/lookup beat or tie mwpm within CI: " << (b_ok ? "yes" : "NO")
      << "; (c) lookup <= all: " << (c_ok ? "yes" : "NO") << ";" << note.str();
    detail = d.str();
    return a_ok && b_ok && c_ok;
}

bool criterion_pseudo_threshold(std::string& detail, const MlpModel& canon_02) {
    const CodeLayout layout = build_layout(3);
    const FfnnDecoder dec(layout, canon_02);
    const long trials = 100000;

    std::vector<CurvePoint> points;
    int sign_changes = 0;
    int prev_sign = 0;
    for (int i = 0; i < 8; ++i) {
        const double q = 0.001 * std::pow(100.0, i / 7.0);
        const CurvePoint pt = logical_error_rate(dec, layout, bitflip_at(q), trials,
                                                 5100 + std::uint64_t(i), 4);
        points.push_back(pt);
        const double diff = pt.rate - pt.q_effective;
        const int sign = diff > 0.0 ? 1 : diff < 0.0 ? -1 : 0;
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) ++sign_changes;
            prev_sign = sign;
        }
        std::cerr << "# criterion 10: q = " << fmt(q) << ", rate = " << fmt(pt.rate) << "\n";
    }

    const PseudoThreshold cross = pseudo_threshold(points);
    std::ostringstream d;
    d << sign_changes << " identity crossing(s) over q in [0.001, 0.1]";
    if (cross.status == CrossingStatus::ok)
        d << "; crossing at p_step " << fmt(cross.p_step) << " (q " << fmt(cross.q_effective)
          << ", bracketed by q " << fmt(cross.bracket_lo) << " .. " << fmt(cross.bracket_hi)
          << ")";
    else
        d << "; no crossing found (" << cross.note << ")";
    detail = d.str();

    return sign_changes == 1 && cross.status == CrossingStatus::ok &&
           cross.p_step >= 0.002 && cross.p_step <= 0.02;
}

bool criterion_synthetic_threshold(std::string& detail) {
    const double pivot = 0.015;
    std::vector<std::vector<CurvePoint>> curves;
    for (const int d : {3, 5, 7}) {
        std::vector<CurvePoint> curve;
        for (int i = 0; i < 6; ++i) {
            CurvePoint pt;
            pt.d = d;
            pt.p_step = 0.004 * std::pow(10.0, i / 5.0);
            pt.q_effective = effective_cycle_prob(pt.p_step, 11);
            pt.trials = 1000000;
            pt.rate = pivot * std::pow(pt.p_step / pivot, (d + 1) / 2.0);
            pt.failures = long(std::lround(pt.rate * 1e6));
            wilson_interval(pt.failures, pt.trials, pt.ci_lo, pt.ci_hi);
            curve.push_back(pt);
        }
        curves.push_back(curve);
    }
    const ThresholdEstimate est = estimate_threshold(curves);
    detail = std::to_string(est.n_crossings) + " pair crossing(s), mean p_step " +
             fmt(est.mean_p_step) + " (target 0.015 +- 2%)";
    return est.n_crossings == 2 && std::abs(est.mean_p_step - pivot) <= 0.02 * pivot;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        bool pass;
        std::string detail;
    };
    std::vector<Criterion> results;
    const auto report = [&](int id, bool pass, const std::string& detail) {
        results.push_back({id, pass, detail});
        std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " - " << detail
                  << std::endl;
    };
    const auto guarded = [&](int id, auto&& fn) {
        std::string detail;
        bool pass = false;
        try {
            pass = fn(detail);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        report(id, pass, detail);
    };

    guarded(1, criterion_counts);
    guarded(2, criterion_class_counts);
    guarded(3, criterion_method_agreement);
    guarded(4, criterion_worked_equivalences);
    guarded(5, criterion_gauge_invariance);
    guarded(6, criterion_gradient_check);
    guarded(7, criterion_cycle_prob);
    guarded(8, criterion_bench_direction);

    std::vector<OperatingPoint> points;
    MlpModel canon_02;
    guarded(9, [&](std::string& detail) {
        return criterion_decoder_ordering(detail, points, canon_02);
    });
    if (canon_02.in_dim > 0) {
        guarded(10, [&](std::string& detail) {
            return criterion_pseudo_threshold(detail, canon_02);
        });
    } else {
        report(10, false, "skipped: criterion 9 produced no trained model");
    }
    guarded(11, criterion_synthetic_threshold);

    int passed = 0;
    bool raw_clause_failed = false;
    for (const auto& r : results) {
        passed += r.pass;
        if (r.id == 9 && !r.pass && r.detail.find("within CI: NO") != std::string::npos)
            raw_clause_failed = true;
    }
    std::cout << passed << " of " << results.size() << " criteria passed" << std::endl;
    if (raw_clause_failed) {
        std::cout << "known limitation: raw-label networks cannot match the matching baseline"
                     " here. Gauge-equivalent qubit pairs make the per-bit posteriors of both"
                     " members sit below one half on single-defect syndromes, so thresholding"
                     " yields a syndrome-inconsistent empty correction no matter how long the"
                     " training runs; canonical labels remove that symmetry (the ordering that"
                     " sub-criterion (a) checks)."
                  << std::endl;
    }
    return passed == int(results.size()) ? 0 : 1;
}
