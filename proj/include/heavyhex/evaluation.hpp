#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heavyhex/code.hpp"
#include "heavyhex/gauge.hpp"
#include "heavyhex/lookup.hpp"
#include "heavyhex/matching.hpp"
#include "heavyhex/mlp.hpp"
#include "heavyhex/noise.hpp"

namespace heavyhex {

struct CurvePoint {
    int d = 0;
    double p_step = 0.0;
    double q_effective = 0.0;
    long trials = 0;
    long failures = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;

    double ci_halfwidth() const { return 0.5 * (ci_hi - ci_lo); }
};

/// 95% Wilson score interval for failures out of trials.
void wilson_interval(long failures, long trials, double& lo, double& hi);

/// A decoder maps one measured syndrome to a predicted error string for a
/// single error type.  Implementations must be safe to call concurrently.
class Decoder {
public:
    virtual ~Decoder() = default;
    virtual ErrorString decode(const Syndrome& syndrome) const = 0;
    virtual ErrorType type() const = 0;
    virtual std::string name() const = 0;
};

class FfnnDecoder : public Decoder {
public:
    FfnnDecoder(const CodeLayout& layout, MlpModel model);

    ErrorString decode(const Syndrome& syndrome) const override;
    ErrorType type() const override;
    std::string name() const override { return "ffnn"; }
    const MlpModel& model() const { return model_; }

private:
    const CodeLayout& layout_;
    MlpModel model_;
    std::optional<GaugeBasis> canon_basis_;  ///< set when trained on canonical X labels
};

class MwpmDecoder : public Decoder {
public:
    MwpmDecoder(const CodeLayout& layout, ErrorType type);

    ErrorString decode(const Syndrome& syndrome) const override;
    ErrorType type() const override { return type_; }
    std::string name() const override { return "mwpm"; }

private:
    MatchingDecoder matcher_;
    ErrorType type_;
};

class TableDecoder : public Decoder {
public:
    TableDecoder(const CodeLayout& layout, ErrorType type, double q);

    ErrorString decode(const Syndrome& syndrome) const override;
    ErrorType type() const override { return type_; }
    std::string name() const override { return "lookup"; }

private:
    LookupDecoder table_;
    ErrorType type_;
};

/// Monte Carlo logical error rate.  Per trial: sample an error, measure the
/// syndrome (with syndrome noise if configured), decode, and count a failure
/// iff the residual actual XOR predicted lies in a nontrivial gauge class of
/// the decoder's error type.  Trial t draws from stream (seed, t), so the
/// estimate is independent of the worker count.
CurvePoint logical_error_rate(const Decoder& decoder, const CodeLayout& layout,
                              const NoiseConfig& noise, long trials, std::uint64_t seed,
                              int workers = 1);

enum class CrossingStatus { ok, degenerate, outside_range };

struct PseudoThreshold {
    CrossingStatus status = CrossingStatus::outside_range;
    double p_step = 0.0;       ///< crossing mapped back to the per-step axis
    double q_effective = 0.0;  ///< crossing on the per-cycle axis (where it is solved)
    double bracket_lo = 0.0;   ///< bracketing sweep q values (ok only)
    double bracket_hi = 0.0;
    std::string note;
};

/// Crossing of one distance's rate curve with the identity line rate = q,
/// solved by log-log linear interpolation on the q_effective axis.  Points
/// with zero rate are skipped (no log-log information).
PseudoThreshold pseudo_threshold(const std::vector<CurvePoint>& points);

struct PairCrossing {
    int d_low = 0;
    int d_high = 0;
    CrossingStatus status = CrossingStatus::outside_range;
    double p_step = 0.0;
    std::string note;
};

struct ThresholdEstimate {
    std::vector<PairCrossing> pairs;
    double mean_p_step = 0.0;  ///< mean over ok pairs; 0 when none crossed
    int n_crossings = 0;
};

/// Threshold from curve crossings of adjacent distances (log-log interpolated
/// on the p_step axis).  Each curve is one distance's sweep, sorted by p.
ThresholdEstimate estimate_threshold(const std::vector<std::vector<CurvePoint>>& curves);

struct BenchRow {
    std::string method;
    std::size_t n = 0;
    double seconds = 0.0;
};

/// Wall-clock canonicalization timing over one shared batch of bit-flip
/// errors sampled at probability q from (seed, i) streams.
std::vector<BenchRow> bench_gauge(const CodeLayout& layout, std::size_t n,
                                  const std::vector<std::string>& methods, double q,
                                  std::uint64_t seed);

}  // namespace heavyhex
