#include "satbeam/electrical.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include <Eigen/Dense>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

// Tracks Alg. 1's "power increases little" rule on the best observed power.
class StopRule {
public:
    StopRule(double epsilon, std::size_t window) : epsilon_(epsilon), window_(window) {}

    /// Returns true when the run should stop after this observation.
    bool observe(double power) {
        if (window_ == 0) return false;
        if (!seen_) {
            seen_ = true;
            best_ = power;
            return false;
        }
        const double previous = best_;
        if (power > best_) best_ = power;
        const double gain = previous > 0.0 ? (best_ - previous) / previous
                                           : std::numeric_limits<double>::infinity();
        stalled_ = gain < epsilon_ ? stalled_ + 1 : 0;
        return stalled_ >= window_;
    }

private:
    double epsilon_;
    std::size_t window_;
    bool seen_ = false;
    double best_ = 0.0;
    std::size_t stalled_ = 0;
};

double monitor_value(const Monitor& monitor, const RealVector& phases) {
    return monitor ? monitor(phases) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void AsspParams::validate() const {
    if (!(a > 0.0)) throw InvalidArgument("assp: a must be > 0");
    if (!(b >= 0.0)) throw InvalidArgument("assp: b must be >= 0");
    if (!(c > 0.0)) throw InvalidArgument("assp: c must be > 0");
    if (!(omega > 0.0 && omega <= 1.0)) throw InvalidArgument("assp: omega must be in (0, 1]");
    if (!(step_exponent > 0.0 && step_exponent <= 1.0)) {
        throw InvalidArgument("assp: step_exponent must be in (0, 1]");
    }
    if (!(zeta > 0.0)) throw InvalidArgument("assp: zeta must be > 0 (eta_0 = a / zeta^xi)");
    if (!(stop_epsilon >= 0.0)) throw InvalidArgument("assp: stop_epsilon must be >= 0");
}

void SequentialParams::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("sequential: step must be > 0");
    if (!(stop_epsilon >= 0.0)) throw InvalidArgument("sequential: stop_epsilon must be >= 0");
}

RealVector structure_matrix(const ArrayGeometry& geom) {
    geom.validate();
    RealVector d(static_cast<Eigen::Index>(geom.size()));
    Eigen::Index i = 0;
    for (int n = 0; n < geom.cols; ++n) {
        for (int m = 0; m < geom.rows; ++m) {
            d(i++) = std::sqrt(static_cast<double>(m * m + n * n));
        }
    }
    return d;
}

PerturbationDraw PerturbationDraw::sample(std::size_t count, Rng& rng) {
    PerturbationDraw draw;
    draw.common_sign = rng.sign();
    draw.signs.resize(static_cast<Eigen::Index>(count));
    for (Eigen::Index i = 0; i < draw.signs.size(); ++i) {
        draw.signs(i) = rng.sign();
    }
    return draw;
}

RealVector perturbation_vector(const RealVector& structure, const PerturbationDraw& draw,
                               const AsspParams& params, std::size_t k) {
    if (structure.size() != draw.signs.size()) {
        throw InvalidArgument("perturbation_vector: structure and draw lengths differ");
    }
    const double decay = std::pow(static_cast<double>(k) + 1.0, params.omega);
    return (params.b * draw.common_sign * structure + params.c * draw.signs) / decay;
}

GradientEstimate assp_gradient(const RealVector& phases, const RealVector& delta,
                               PowerOracle& oracle) {
    if (phases.size() != delta.size()) {
        throw InvalidArgument("assp_gradient: phase and perturbation lengths differ");
    }
    const double energy = delta.squaredNorm();
    if (!(energy > 0.0)) throw DegeneratePerturbation("assp_gradient: zero perturbation");
    GradientEstimate g;
    g.power_plus = oracle.measure(phases + delta);
    g.power_minus = oracle.measure(phases - delta);
    g.gradient = ((g.power_plus - g.power_minus) / (2.0 * energy)) * delta;
    return g;
}

double step_size(const AsspParams& params, std::size_t k) {
    return params.a / std::pow(params.zeta + static_cast<double>(k), params.step_exponent);
}

AsspState assp_step(const AsspState& state, const RealVector& structure,
                    const AsspParams& params, PowerOracle& oracle, Rng& rng,
                    OptimizerTrace* trace, const Monitor& monitor) {
    const auto draw = PerturbationDraw::sample(static_cast<std::size_t>(state.phases.size()), rng);
    const RealVector delta = perturbation_vector(structure, draw, params, state.k);
    const GradientEstimate g = assp_gradient(state.phases, delta, oracle);

    AsspState next{state.phases + step_size(params, state.k) * g.gradient, state.k + 1};
    if (!next.phases.allFinite()) throw NumericalError("assp_step: non-finite phases");
    if (trace != nullptr) {
        trace->records.push_back({state.k, g.power_plus, g.power_minus,
                                  monitor_value(monitor, next.phases),
                                  phase_checksum(next.phases), oracle.queries()});
    }
    return next;
}

OptimizerResult run_assp(const RealVector& initial_phases, const RealVector& structure,
                         PowerOracle& oracle, const AsspParams& params, Rng& rng,
                         const Monitor& monitor) {
    params.validate();
    if (structure.size() != initial_phases.size()) {
        throw InvalidArgument("run_assp: structure and phase lengths differ");
    }
    OptimizerResult result;
    StopRule stop(params.stop_epsilon, params.stop_window);
    AsspState state{initial_phases, 0};
    while (state.k < params.max_iters) {
        state = assp_step(state, structure, params, oracle, rng, &result.trace, monitor);
        const auto& last = result.trace.records.back();
        if (stop.observe(std::max(last.power_plus, last.power_minus))) {
            result.trace.stopped_early = state.k < params.max_iters;
            break;
        }
    }
    result.weights.phases = state.phases;
    return result;
}

OptimizerResult run_isotropic_spsa(const RealVector& initial_phases, PowerOracle& oracle,
                                   const AsspParams& params, Rng& rng, const Monitor& monitor) {
    AsspParams iso = params;
    iso.b = 0.0;
    return run_assp(initial_phases, RealVector::Zero(initial_phases.size()), oracle, iso, rng,
                    monitor);
}

OptimizerResult run_sequential_perturbation(const RealVector& initial_phases,
                                            PowerOracle& oracle,
                                            const SequentialParams& params,
                                            const Monitor& monitor) {
    params.validate();
    OptimizerResult result;
    StopRule stop(params.stop_epsilon, params.stop_window);
    RealVector phases = initial_phases;
    for (std::size_t sweep = 0; sweep < params.max_sweeps; ++sweep) {
        double plus = 0.0;
        double minus = 0.0;
        double best = 0.0;
        oracle.set_reference(phases);
        for (Eigen::Index i = 0; i < phases.size(); ++i) {
            plus = oracle.probe_element(i, phases(i) + params.step);
            minus = oracle.probe_element(i, phases(i) - params.step);
            phases(i) += plus >= minus ? params.step : -params.step;
            oracle.commit_element(i, phases(i));
            best = std::max({best, plus, minus});
        }
        result.trace.records.push_back({sweep, plus, minus, monitor_value(monitor, phases),
                                        phase_checksum(phases), oracle.queries()});
        if (stop.observe(best)) {
            result.trace.stopped_early = sweep + 1 < params.max_sweeps;
            break;
        }
    }
    result.weights.phases = phases;
    return result;
}

std::uint64_t phase_checksum(const RealVector& phases) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        std::uint64_t bits = 0;
        const double value = phases(i);
        std::memcpy(&bits, &value, sizeof bits);
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= (bits >> (8 * byte)) & 0xFFU;
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

DoaFit fit_doa(const RealVector& phases, const ArrayGeometry& geom) {
    geom.validate();
    if (static_cast<std::size_t>(phases.size()) != geom.size()) {
        throw InvalidArgument("fit_doa: phase count does not match the array");
    }
    const double k = 2.0 * kPi * geom.spacing;
    Eigen::MatrixXd design(phases.size(), 3);
    Eigen::Index i = 0;
    for (int n = 0; n < geom.cols; ++n) {
        for (int m = 0; m < geom.rows; ++m) {
            design.row(i++) << k * m, k * n, 1.0;
        }
    }
    // A single row or column leaves its axis unobservable; drop it.
    Eigen::Vector3d coeff = Eigen::Vector3d::Zero();
    if (geom.rows > 1 && geom.cols > 1) {
        coeff = design.colPivHouseholderQr().solve(phases);
    } else if (geom.rows > 1) {
        Eigen::MatrixXd sub(phases.size(), 2);
        sub << design.col(0), design.col(2);
        const Eigen::Vector2d c2 = sub.colPivHouseholderQr().solve(phases);
        coeff << c2(0), 0.0, c2(1);
    } else if (geom.cols > 1) {
        Eigen::MatrixXd sub(phases.size(), 2);
        sub << design.col(1), design.col(2);
        const Eigen::Vector2d c2 = sub.colPivHouseholderQr().solve(phases);
        coeff << 0.0, c2(0), c2(1);
    } else {
        coeff << 0.0, 0.0, phases(0);
    }
    return {coeff(0), coeff(1), coeff(2)};
}

}  // namespace satbeam
