#include "heavyhex/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace heavyhex {

namespace {

constexpr double kZ95 = 1.959963984540054;

BitVec concat_bits(const BitVec& a, const BitVec& b) {
    BitVec out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.get(i)) out.set(i);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.get(i)) out.set(a.size() + i);
    }
    return out;
}

ErrorType type_of_label(LabelKind kind) {
    return (kind == LabelKind::error_x || kind == LabelKind::canon_x) ? ErrorType::X
                                                                      : ErrorType::Z;
}

}  // namespace

void wilson_interval(long failures, long trials, double& lo, double& hi) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (failures < 0 || failures > trials)
        throw std::invalid_argument("wilson_interval: failures out of range");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(failures) / n;
    double z2 = kZ95 * kZ95;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

FfnnDecoder::FfnnDecoder(const CodeLayout& layout, MlpModel model)
    : layout_(layout), model_(std::move(model)) {
    std::size_t nz = layout.z_stabilizers.size();
    std::size_t nx = layout.x_stabilizers.size();
    std::size_t want = model_.input == InputKind::syndrome_z    ? nz
                       : model_.input == InputKind::syndrome_x ? nx
                                                                : nz + nx;
    if (static_cast<std::size_t>(model_.in_dim) != want)
        throw std::invalid_argument("FfnnDecoder: model input width does not match layout");
    if (static_cast<std::size_t>(model_.out_dim) != layout.n_qubits)
        throw std::invalid_argument("FfnnDecoder: model output width does not match layout");
    if (model_.target == LabelKind::canon_x) canon_basis_ = x_gauge_basis(layout);
}

ErrorType FfnnDecoder::type() const { return type_of_label(model_.target); }

ErrorString FfnnDecoder::decode(const Syndrome& syndrome) const {
    BitVec in = model_.input == InputKind::syndrome_z   ? syndrome.z_bits
                : model_.input == InputKind::syndrome_x ? syndrome.x_bits
                                                        : concat_bits(syndrome.z_bits,
                                                                      syndrome.x_bits);
    Canonicalizer canon;
    if (model_.target == LabelKind::canon_x) {
        const GaugeBasis& gb = *canon_basis_;
        canon = [&gb](const BitVec& e) { return canonical_bitflip_exact(e, gb); };
    } else if (model_.target == LabelKind::canon_z) {
        int d = layout_.d;
        canon = [d](const BitVec& e) { return canonical_phaseflip(e, d); };
    }
    return mlp_predict(model_, in, canon);
}

MwpmDecoder::MwpmDecoder(const CodeLayout& layout, ErrorType type)
    : matcher_(layout), type_(type) {}

ErrorString MwpmDecoder::decode(const Syndrome& syndrome) const {
    if (type_ == ErrorType::X) return matcher_.decode_bitflip(syndrome.z_bits).correction;
    return matcher_.decode_phaseflip(syndrome.x_bits);
}

TableDecoder::TableDecoder(const CodeLayout& layout, ErrorType type, double q)
    : table_(layout, type, q), type_(type) {}

ErrorString TableDecoder::decode(const Syndrome& syndrome) const {
    return table_.decode(type_ == ErrorType::X ? syndrome.z_bits : syndrome.x_bits);
}

CurvePoint logical_error_rate(const Decoder& decoder, const CodeLayout& layout,
                              const NoiseConfig& noise, long trials, std::uint64_t seed,
                              int workers) {
    if (trials < 1) throw std::invalid_argument("logical_error_rate: trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("logical_error_rate: workers must be >= 1");
    noise.validate();

    ErrorType type = decoder.type();
    std::optional<GaugeBasis> xb;
    if (type == ErrorType::X) xb = x_gauge_basis(layout);

    auto run = [&](long lo, long hi) {
        long failures = 0;
        for (long t = lo; t < hi; ++t) {
            Rng rng(seed, static_cast<std::uint64_t>(t));
            PauliSample sample = sample_error(layout, noise, rng);
            Syndrome syn = measure_syndrome(layout, sample, noise, rng);
            ErrorString predicted = decoder.decode(syn);
            ErrorString residual = type == ErrorType::X ? sample.e_x : sample.e_z;
            residual ^= predicted;
            bool failed = type == ErrorType::X
                              ? !in_span(xb->reduced, residual)
                              : canonical_phaseflip(residual, layout.d).any();
            if (failed) ++failures;
        }
        return failures;
    };

    long failures = 0;
    if (workers == 1) {
        failures = run(0, trials);
    } else {
        std::vector<long> counts(static_cast<std::size_t>(workers), 0);
        std::vector<std::thread> threads;
        long chunk = trials / workers;
        long extra = trials % workers;
        long start = 0;
        for (int w = 0; w < workers; ++w) {
            long len = chunk + (w < extra ? 1 : 0);
            threads.emplace_back(
                [&run, &counts, w, start, len] { counts[static_cast<std::size_t>(w)] = run(start, start + len); });
            start += len;
        }
        for (auto& th : threads) th.join();
        for (long c : counts) failures += c;
    }

    CurvePoint pt;
    pt.d = layout.d;
    pt.p_step = noise.p_step;
    pt.q_effective = noise.effective_prob();
    pt.trials = trials;
    pt.failures = failures;
    pt.rate = static_cast<double>(failures) / static_cast<double>(trials);
    wilson_interval(failures, trials, pt.ci_lo, pt.ci_hi);
    return pt;
}

namespace {

struct LogPoint {
    double x;  ///< ln q or ln p
    double y;  ///< ln rate
    double p_step;
};

std::vector<LogPoint> log_points(const std::vector<CurvePoint>& points, bool q_axis) {
    std::vector<LogPoint> out;
    for (const auto& pt : points) {
        double x = q_axis ? pt.q_effective : pt.p_step;
        if (pt.rate <= 0.0 || x <= 0.0) continue;
        out.push_back({std::log(x), std::log(pt.rate), pt.p_step});
    }
    std::sort(out.begin(), out.end(), [](const LogPoint& a, const LogPoint& b) { return a.x < b.x; });
    return out;
}

double interp(const std::vector<LogPoint>& pts, double x) {
    if (x <= pts.front().x) return pts.front().y;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (x <= pts[i].x) {
            double t = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
            return pts[i - 1].y + t * (pts[i].y - pts[i - 1].y);
        }
    }
    return pts.back().y;
}

}  // namespace

PseudoThreshold pseudo_threshold(const std::vector<CurvePoint>& points) {
    PseudoThreshold result;
    std::vector<LogPoint> pts = log_points(points, true);
    if (pts.size() < 2) {
        result.note = "fewer than two nonzero sweep points";
        return result;
    }

    // Steps per cycle recovered from any point with 0 < p < 1, so the
    // crossing can be reported on both axes.
    double steps = 1.0;
    for (const auto& pt : points) {
        if (pt.p_step > 0.0 && pt.p_step < 1.0 && pt.q_effective > 0.0 && pt.q_effective < 1.0) {
            steps = std::log1p(-pt.q_effective) / std::log1p(-pt.p_step);
            break;
        }
    }
    auto to_p_step = [steps](double q) { return -std::expm1(std::log1p(-q) / steps); };

    std::vector<double> f(pts.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        f[i] = pts[i].y - pts[i].x;
        if (std::abs(f[i]) > 1e-12) all_zero = false;
    }
    if (all_zero) {
        result.status = CrossingStatus::degenerate;
        double x = 0.5 * (pts[0].x + pts[1].x);
        result.q_effective = std::exp(x);
        result.p_step = to_p_step(result.q_effective);
        result.bracket_lo = std::exp(pts[0].x);
        result.bracket_hi = std::exp(pts[1].x);
        result.note = "curve coincides with the identity line; every point is a fixed point";
        return result;
    }

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        bool zero_here = std::abs(f[i]) <= 1e-12;
        if (zero_here || f[i] * f[i + 1] < 0.0) {
            double x = zero_here
                           ? pts[i].x
                           : pts[i].x - f[i] * (pts[i + 1].x - pts[i].x) / (f[i + 1] - f[i]);
            result.status = CrossingStatus::ok;
            result.q_effective = std::exp(x);
            result.p_step = to_p_step(result.q_effective);
            result.bracket_lo = std::exp(pts[i].x);
            result.bracket_hi = std::exp(pts[zero_here ? i : i + 1].x);
            return result;
        }
    }
    if (std::abs(f.back()) <= 1e-12) {
        result.status = CrossingStatus::ok;
        result.q_effective = std::exp(pts.back().x);
        result.p_step = to_p_step(result.q_effective);
        result.bracket_lo = result.bracket_hi = result.q_effective;
        return result;
    }
    result.note = f[0] > 0.0 ? "curve stays above the identity line across the sweep"
                             : "curve stays below the identity line across the sweep";
    return result;
}

ThresholdEstimate estimate_threshold(const std::vector<std::vector<CurvePoint>>& curves) {
    if (curves.size() < 2)
        throw std::invalid_argument("estimate_threshold: need at least two distances");
    struct Curve {
        int d;
        std::vector<LogPoint> pts;
    };
    std::vector<Curve> prepared;
    for (const auto& curve : curves) {
        if (curve.empty()) throw std::invalid_argument("estimate_threshold: empty curve");
        Curve c{curve.front().d, log_points(curve, false)};
        for (const auto& pt : curve) {
            if (pt.d != c.d)
                throw std::invalid_argument("estimate_threshold: mixed distances in one curve");
        }
        prepared.push_back(std::move(c));
    }
    std::sort(prepared.begin(), prepared.end(),
              [](const Curve& a, const Curve& b) { return a.d < b.d; });

    ThresholdEstimate est;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < prepared.size(); ++i) {
        const Curve& a = prepared[i];
        const Curve& b = prepared[i + 1];
        PairCrossing pc;
        pc.d_low = a.d;
        pc.d_high = b.d;
        if (a.pts.size() < 2 || b.pts.size() < 2) {
            pc.note = "not enough nonzero points";
            est.pairs.push_back(pc);
            continue;
        }
        double lo = std::max(a.pts.front().x, b.pts.front().x);
        double hi = std::min(a.pts.back().x, b.pts.back().x);
        if (lo >= hi) {
            pc.note = "no overlapping p range";
            est.pairs.push_back(pc);
            continue;
        }
        std::vector<double> knots{lo, hi};
        for (const auto& pt : a.pts) {
            if (pt.x > lo && pt.x < hi) knots.push_back(pt.x);
        }
        for (const auto& pt : b.pts) {
            if (pt.x > lo && pt.x < hi) knots.push_back(pt.x);
        }
        std::sort(knots.begin(), knots.end());
        std::vector<double> g(knots.size());
        bool coincide = true;
        for (std::size_t k = 0; k < knots.size(); ++k) {
            g[k] = interp(a.pts, knots[k]) - interp(b.pts, knots[k]);
            if (std::abs(g[k]) > 1e-12) coincide = false;
        }
        if (coincide) {
            pc.note = "curves coincide; no crossing";
            est.pairs.push_back(pc);
            continue;
        }
        bool found = false;
        for (std::size_t k = 0; k + 1 < g.size() && !found; ++k) {
            bool zero_here = std::abs(g[k]) <= 1e-12;
            if (zero_here || g[k] * g[k + 1] < 0.0) {
                double x = zero_here
                               ? knots[k]
                               : knots[k] - g[k] * (knots[k + 1] - knots[k]) / (g[k + 1] - g[k]);
                pc.status = CrossingStatus::ok;
                pc.p_step = std::exp(x);
                found = true;
            }
        }
        if (!found && std::abs(g.back()) <= 1e-12) {
            pc.status = CrossingStatus::ok;
            pc.p_step = std::exp(knots.back());
            found = true;
        }
        if (!found) {
            pc.note = g.front() > 0.0
                          ? "no crossing in range; smaller distance worse across the overlap"
                          : "no crossing in range; smaller distance better across the overlap";
        }
        est.pairs.push_back(pc);
        if (pc.status == CrossingStatus::ok) {
            sum += pc.p_step;
            ++est.n_crossings;
        }
    }
    if (est.n_crossings > 0) est.mean_p_step = sum / est.n_crossings;
    return est;
}

std::vector<BenchRow> bench_gauge(const CodeLayout& layout, std::size_t n,
                                  const std::vector<std::string>& methods, double q,
                                  std::uint64_t seed) {
    if (n == 0) return {};
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("bench_gauge: q must lie in [0, 1]");

    GaugeBasis gb = x_gauge_basis(layout);
    for (const auto& m : methods) {
        if (m != "search" && m != "rank" && m != "exact")
            throw std::invalid_argument("bench_gauge: unknown method '" + m + "'");
        if (m == "search" && !gb.has_span())
            throw std::invalid_argument(
                "bench_gauge: search method unavailable at this distance (span cap)");
    }

    std::vector<ErrorString> errors;
    errors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(seed, i);
        errors.push_back(sample_bitflip(layout, q, rng).e_x);
    }

    std::vector<BenchRow> rows;
    std::uint64_t sink = 0;
    for (const auto& m : methods) {
        auto t0 = std::chrono::steady_clock::now();
        if (m == "rank") {
            auto reps = canonical_bitflip_rank(errors, layout, gb, true);
            for (const auto& r : reps) sink += r.weight();
        } else if (m == "search") {
            for (const auto& e : errors) sink += canonical_bitflip_search(e, gb).weight();
        } else {
            for (const auto& e : errors) sink += canonical_bitflip_exact(e, gb).weight();
        }
        auto t1 = std::chrono::steady_clock::now();
        rows.push_back({m, n, std::chrono::duration<double>(t1 - t0).count()});
    }
    volatile std::uint64_t guard = sink;
    (void)guard;
    return rows;
}

}  // namespace heavyhex
