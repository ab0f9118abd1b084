// Ka-band LOS channel seen by an M x N uniform planar array behind a single
// RF chain: array response, channel matrix, spatial spectrum, received
// signal/power and one-pilot gain estimation.
#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "satbeam/oracle.hpp"
#include "satbeam/rng.hpp"

namespace satbeam {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

struct ArrayGeometry {
    int rows = 128;        // M
    int cols = 64;         // N
    double spacing = 0.5;  // element spacing over wavelength

    std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
    void validate() const;  // throws InvalidArgument
};

struct PathComponent {
    double azimuth = 0.0;    // angle from the array normal, rad
    double elevation = 0.0;  // in-plane angle, rad
    Complex gain{1.0, 0.0};
    double path_length = 0.0;  // m
};

/// Element (m, n) = exp(j 2 pi d/lambda [m sin(az) cos(el) + n sin(az) sin(el)]),
/// zero-based m, n.
ComplexMatrix array_response(const ArrayGeometry& geom, double azimuth, double elevation);

/// Sum over paths of gain * exp(-j 2 pi d_l / lambda) / sqrt(MN) * A(path).
ComplexMatrix channel_matrix(const ArrayGeometry& geom, const std::vector<PathComponent>& paths,
                             double wavelength);

/// Column-major flattening (m runs fastest).
ComplexVector vectorize(const ComplexMatrix& h);

/// |F_M H F_N| with unitary DFT matrices.
RealMatrix spatial_spectrum(const ComplexMatrix& h);

/// Analog phase-shifter settings; weights are exp(j * phase).
struct BeamWeights {
    RealVector phases;

    static BeamWeights zeros(std::size_t count) { return {RealVector::Zero(static_cast<Eigen::Index>(count))}; }
    ComplexVector weights() const;
};

/// Phases of vec(A(az, el)).
BeamWeights matched_weights(const ArrayGeometry& geom, double azimuth, double elevation);

/// w^H h: combined noiseless channel seen through the phase shifters.
Complex effective_channel(const RealVector& phases, const ComplexVector& h);

/// y = w^H h s + w^H n, n ~ CN(0, noise_variance I), drawn element by element.
Complex received_signal(const BeamWeights& w, const ComplexVector& h, Complex symbol,
                        double noise_variance, Rng& rng);

/// |y|^2 for one realization of received_signal.
double received_power(const BeamWeights& w, const ComplexVector& h, Complex symbol,
                      double noise_variance, Rng& rng);

/// |w^H h|^2 / (MN |h|^2).
double nrsp(const RealVector& phases, const ComplexVector& h);
inline double nrsp(const BeamWeights& w, const ComplexVector& h) { return nrsp(w.phases, h); }

/// Least-squares estimate of w^H h from (y, s) pilot pairs.
/// Throws InvalidArgument when every pilot symbol is zero.
Complex estimate_effective_gain(const std::vector<std::pair<Complex, Complex>>& pilots);

struct SignalModel {
    Complex symbol{1.0, 0.0};
    double snr_db = 20.0;
};

/// Per-element noise variance |a|^2 |s|^2 / 10^(snr/10).
double noise_variance_from_snr(double snr_db, double path_gain_abs2, double symbol_abs2);

/// Noisy instantaneous received power for a fixed channel. The combined noise
/// w^H n is drawn directly as CN(0, MN sigma^2), which has the same law as the
/// element-wise model for unit-modulus weights. Single-shifter probes update
/// the cached reference sum in O(1).
class BeamPowerOracle final : public PowerOracle {
public:
    BeamPowerOracle(ComplexVector h, Complex symbol, double noise_variance, Rng rng);

    double measure(const RealVector& phases) override;
    void set_reference(const RealVector& phases) override;
    double probe_element(Eigen::Index index, double phase) override;
    void commit_element(Eigen::Index index, double phase) override;

    const ComplexVector& channel() const noexcept { return h_; }
    double noise_variance() const noexcept { return noise_variance_; }
    Rng& rng() noexcept { return rng_; }

private:
    Complex element_change(Eigen::Index index, double phase) const;
    double observe(Complex combined);

    ComplexVector h_;
    Complex symbol_;
    double noise_variance_;
    Rng rng_;
    Complex reference_sum_{0.0, 0.0};
    std::size_t commits_since_refresh_ = 0;
};

}  // namespace satbeam
