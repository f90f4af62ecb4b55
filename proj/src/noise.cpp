#include "heavyhex/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace heavyhex {

std::string to_string(NoiseModel model) {
    switch (model) {
        case NoiseModel::bitflip: return "bitflip";
        case NoiseModel::phaseflip: return "phaseflip";
        case NoiseModel::depolarizing: return "depolarizing";
    }
    throw std::logic_error("unreachable noise model");
}

NoiseModel noise_model_from_string(const std::string& name) {
    if (name == "bitflip") return NoiseModel::bitflip;
    if (name == "phaseflip") return NoiseModel::phaseflip;
    if (name == "depolarizing") return NoiseModel::depolarizing;
    throw std::invalid_argument("unknown noise model '" + name +
                                "' (expected bitflip, phaseflip or depolarizing)");
}

double effective_cycle_prob(double p_step, int steps) {
    if (!(p_step >= 0.0 && p_step <= 1.0))
        throw std::invalid_argument("p_step must lie in [0, 1]");
    if (steps < 1) throw std::invalid_argument("steps must be a positive integer");
    if (p_step == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(steps) * std::log1p(-p_step));
}

void NoiseConfig::validate() const {
    effective_cycle_prob(p_step, steps);
}

PauliSample sample_bitflip(const CodeLayout& layout, double q, Rng& rng) {
    PauliSample s{ErrorString(layout.n_qubits), ErrorString(layout.n_qubits)};
    for (std::size_t i = 0; i < layout.n_qubits; ++i)
        if (rng.bernoulli(q)) s.e_x.set(i);
    return s;
}

PauliSample sample_phaseflip(const CodeLayout& layout, double q, Rng& rng) {
    PauliSample s{ErrorString(layout.n_qubits), ErrorString(layout.n_qubits)};
    for (std::size_t i = 0; i < layout.n_qubits; ++i)
        if (rng.bernoulli(q)) s.e_z.set(i);
    return s;
}

PauliSample sample_depolarizing(const CodeLayout& layout, double q, Rng& rng) {
    PauliSample s{ErrorString(layout.n_qubits), ErrorString(layout.n_qubits)};
    for (std::size_t i = 0; i < layout.n_qubits; ++i) {
        const double u = rng.uniform();
        if (u >= q) continue;
        if (u < q / 3) {
            s.e_x.set(i);
        } else if (u < 2 * q / 3) {
            s.e_x.set(i);
            s.e_z.set(i);
        } else {
            s.e_z.set(i);
        }
    }
    return s;
}

PauliSample sample_error(const CodeLayout& layout, const NoiseConfig& config, Rng& rng) {
    const double q = config.effective_prob();
    switch (config.model) {
        case NoiseModel::bitflip: return sample_bitflip(layout, q, rng);
        case NoiseModel::phaseflip: return sample_phaseflip(layout, q, rng);
        case NoiseModel::depolarizing: return sample_depolarizing(layout, q, rng);
    }
    throw std::logic_error("unreachable noise model");
}

BitVec apply_syndrome_noise(const BitVec& bits, double q, Rng& rng) {
    BitVec out = bits;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (rng.bernoulli(q)) out.flip(i);
    return out;
}

Syndrome measure_syndrome(const CodeLayout& layout, const PauliSample& sample,
                          const NoiseConfig& config, Rng& rng) {
    Syndrome s = syndrome_of(layout, sample.e_x, sample.e_z);
    if (config.syndrome_noise) {
        const double q = config.effective_prob();
        s.z_bits = apply_syndrome_noise(s.z_bits, q, rng);
        s.x_bits = apply_syndrome_noise(s.x_bits, q, rng);
    }
    return s;
}

}  // namespace heavyhex
