// Fine beam alignment against a noisy scalar power oracle: array-structure
// simultaneous perturbation (ASSP), its isotropic special case, and the
// one-shifter-at-a-time sequential baseline. The optimization variable is the
// phase vector, so every weight keeps unit modulus.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "satbeam/channel.hpp"
#include "satbeam/oracle.hpp"
#include "satbeam/rng.hpp"

namespace satbeam {

struct AsspParams {
    double a = 0.7;               // step-size numerator
    double b = 0.02;              // weight of the array-structure term
    double c = 0.01;              // weight of the isotropic term
    double zeta = 0.1;            // step-size offset
    double omega = 0.101;         // perturbation decay exponent
    double step_exponent = 0.602; // step-size decay exponent
    std::size_t max_iters = 100;
    double stop_epsilon = 1e-3;   // relative improvement of the best observed power
    std::size_t stop_window = 3;  // 0 disables early stopping

    void validate() const;  // throws InvalidArgument
};

struct SequentialParams {
    double step = 0.1;             // rad, probe size per shifter
    std::size_t max_sweeps = 50;
    double stop_epsilon = 1e-3;
    std::size_t stop_window = 3;  // sweeps; 0 disables early stopping

    void validate() const;
};

/// d_mn = sqrt(m^2 + n^2) with zero-based m, n, in the BeamWeights vec order.
RealVector structure_matrix(const ArrayGeometry& geom);

struct PerturbationDraw {
    int common_sign = 1;     // shared Bernoulli sign on the structure term
    RealVector signs;        // per-element Bernoulli signs

    /// Draws the common sign first, then one sign per element.
    static PerturbationDraw sample(std::size_t count, Rng& rng);
};

/// delta_i = (b D_i xi + c Delta_i) / (k + 1)^omega.
RealVector perturbation_vector(const RealVector& structure, const PerturbationDraw& draw,
                               const AsspParams& params, std::size_t k);

struct GradientEstimate {
    RealVector gradient;
    double power_plus = 0.0;
    double power_minus = 0.0;
};

/// Two queries, P(+delta) and P(-delta). The difference is attributed along
/// the perturbation line: g = (P+ - P-) delta / (2 |delta|^2).
/// Throws DegeneratePerturbation when delta is identically zero.
GradientEstimate assp_gradient(const RealVector& phases, const RealVector& delta,
                               PowerOracle& oracle);

/// eta_k = a / (zeta + k)^step_exponent.
double step_size(const AsspParams& params, std::size_t k);

struct IterationRecord {
    std::size_t k = 0;
    double power_plus = 0.0;
    double power_minus = 0.0;
    double nrsp = 0.0;            // NaN when no monitor was supplied
    std::uint64_t checksum = 0;   // of the phase vector after the update
    std::size_t queries = 0;      // cumulative oracle queries of this run
};

struct OptimizerTrace {
    std::vector<IterationRecord> records;
    bool stopped_early = false;
};

struct OptimizerResult {
    BeamWeights weights;
    OptimizerTrace trace;
};

/// Noiseless figure of merit evaluated after every iteration (not an oracle query).
using Monitor = std::function<double(const RealVector&)>;

struct AsspState {
    RealVector phases;
    std::size_t k = 0;
};

/// One iteration: draw, probe, ascend. Appends one record to `trace` if given.
AsspState assp_step(const AsspState& state, const RealVector& structure,
                    const AsspParams& params, PowerOracle& oracle, Rng& rng,
                    OptimizerTrace* trace = nullptr, const Monitor& monitor = {});

OptimizerResult run_assp(const RealVector& initial_phases, const RealVector& structure,
                         PowerOracle& oracle, const AsspParams& params, Rng& rng,
                         const Monitor& monitor = {});

/// run_assp with b = 0.
OptimizerResult run_isotropic_spsa(const RealVector& initial_phases, PowerOracle& oracle,
                                   const AsspParams& params, Rng& rng,
                                   const Monitor& monitor = {});

/// One record per full sweep; 2 queries per shifter.
OptimizerResult run_sequential_perturbation(const RealVector& initial_phases,
                                            PowerOracle& oracle,
                                            const SequentialParams& params,
                                            const Monitor& monitor = {});

/// FNV-1a over the bit patterns of the phases.
std::uint64_t phase_checksum(const RealVector& phases);

struct DoaFit {
    double u = 0.0;       // sin(az) cos(el)
    double v = 0.0;       // sin(az) sin(el)
    double offset = 0.0;  // common phase, rad
};

/// Least-squares fit of phases to 2 pi d/lambda (m u + n v) + offset.
DoaFit fit_doa(const RealVector& phases, const ArrayGeometry& geom);

}  // namespace satbeam
