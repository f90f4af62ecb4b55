#pragma once

#include <cstdint>
#include <string>

#include "heavyhex/code.hpp"
#include "heavyhex/rng.hpp"

namespace heavyhex {

enum class NoiseModel { bitflip, phaseflip, depolarizing };

std::string to_string(NoiseModel model);
NoiseModel noise_model_from_string(const std::string& name);

/// Error probability accumulated over one syndrome-measurement cycle when
/// each of `steps` circuit steps flips independently with probability p_step:
/// 1 - (1 - p_step)^steps, evaluated in a cancellation-free form.
double effective_cycle_prob(double p_step, int steps);

/// Phenomenological noise description.  Data-qubit errors are sampled with
/// the per-cycle probability q = effective_cycle_prob(p_step, steps); when
/// syndrome_noise is set, each measured syndrome bit is additionally flipped
/// with the same probability q.
struct NoiseConfig {
    NoiseModel model = NoiseModel::bitflip;
    double p_step = 0.0;
    int steps = 11;
    bool syndrome_noise = false;
    std::uint64_t seed = 0;

    double effective_prob() const { return effective_cycle_prob(p_step, steps); }
    void validate() const;
};

struct PauliSample {
    ErrorString e_x;
    ErrorString e_z;
};

/// Independent X on each qubit with probability q; e_z stays zero.
PauliSample sample_bitflip(const CodeLayout& layout, double q, Rng& rng);

/// Independent Z on each qubit with probability q; e_x stays zero.
PauliSample sample_phaseflip(const CodeLayout& layout, double q, Rng& rng);

/// Each qubit suffers X, Y or Z with probability q/3 apiece; Y sets both
/// components.  Exactly one uniform draw per qubit.
PauliSample sample_depolarizing(const CodeLayout& layout, double q, Rng& rng);

/// Dispatch on config.model with q = config.effective_prob().
PauliSample sample_error(const CodeLayout& layout, const NoiseConfig& config, Rng& rng);

/// Flip each bit independently with probability q.
BitVec apply_syndrome_noise(const BitVec& bits, double q, Rng& rng);

/// Syndrome of the sample, with measurement flips applied when configured.
/// Draw order per trial: data-qubit draws first, then z-bit flips, then
/// x-bit flips, so streams stay reproducible.
Syndrome measure_syndrome(const CodeLayout& layout, const PauliSample& sample,
                          const NoiseConfig& config, Rng& rng);

}  // namespace heavyhex
