#include "satbeam/channel.hpp"

#include <cmath>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

constexpr Complex kJ{0.0, 1.0};

// Rebuild the reference sum from scratch after this many single-element commits.
constexpr std::size_t kRefreshInterval = 1U << 16;

RealMatrix element_phases(const ArrayGeometry& geom, double azimuth, double elevation) {
    geom.validate();
    const double k = 2.0 * kPi * geom.spacing;
    const double u = std::sin(azimuth) * std::cos(elevation);
    const double v = std::sin(azimuth) * std::sin(elevation);
    RealMatrix p(geom.rows, geom.cols);
    for (int n = 0; n < geom.cols; ++n) {
        for (int m = 0; m < geom.rows; ++m) {
            p(m, n) = k * (m * u + n * v);
        }
    }
    return p;
}

ComplexMatrix unitary_dft(Eigen::Index size) {
    ComplexMatrix f(size, size);
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    for (Eigen::Index r = 0; r < size; ++r) {
        for (Eigen::Index c = 0; c < size; ++c) {
            // Reduce the index product first to keep the argument small.
            const double turns = static_cast<double>((r * c) % size) / static_cast<double>(size);
            f(r, c) = std::polar(scale, -2.0 * kPi * turns);
        }
    }
    return f;
}

}  // namespace

void ArrayGeometry::validate() const {
    if (rows < 1) throw InvalidArgument("array rows must be >= 1");
    if (cols < 1) throw InvalidArgument("array cols must be >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw InvalidArgument("array spacing must be > 0");
    }
}

ComplexMatrix array_response(const ArrayGeometry& geom, double azimuth, double elevation) {
    const RealMatrix p = element_phases(geom, azimuth, elevation);
    return p.unaryExpr([](double x) { return std::polar(1.0, x); });
}

ComplexMatrix channel_matrix(const ArrayGeometry& geom, const std::vector<PathComponent>& paths,
                             double wavelength) {
    geom.validate();
    if (!(wavelength > 0.0)) throw InvalidArgument("channel_matrix: wavelength must be > 0");
    const double norm = 1.0 / std::sqrt(static_cast<double>(geom.size()));
    ComplexMatrix h = ComplexMatrix::Zero(geom.rows, geom.cols);
    for (const auto& path : paths) {
        const double turns = std::fmod(path.path_length / wavelength, 1.0);
        const Complex coeff = path.gain * std::exp(-2.0 * kPi * turns * kJ) * norm;
        h += coeff * array_response(geom, path.azimuth, path.elevation);
    }
    return h;
}

ComplexVector vectorize(const ComplexMatrix& h) {
    return Eigen::Map<const ComplexVector>(h.data(), h.size());
}

RealMatrix spatial_spectrum(const ComplexMatrix& h) {
    const ComplexMatrix spectrum = unitary_dft(h.rows()) * h * unitary_dft(h.cols());
    return spectrum.cwiseAbs();
}

ComplexVector BeamWeights::weights() const {
    return phases.unaryExpr([](double p) { return std::polar(1.0, p); });
}

BeamWeights matched_weights(const ArrayGeometry& geom, double azimuth, double elevation) {
    const RealMatrix p = element_phases(geom, azimuth, elevation);
    return {Eigen::Map<const RealVector>(p.data(), p.size())};
}

Complex effective_channel(const RealVector& phases, const ComplexVector& h) {
    if (phases.size() != h.size()) {
        throw InvalidArgument("weight and channel lengths differ");
    }
    Complex sum{0.0, 0.0};
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        sum += std::polar(1.0, -phases(i)) * h(i);
    }
    return sum;
}

Complex received_signal(const BeamWeights& w, const ComplexVector& h, Complex symbol,
                        double noise_variance, Rng& rng) {
    if (noise_variance < 0.0) throw InvalidArgument("noise variance must be >= 0");
    Complex y = effective_channel(w.phases, h) * symbol;
    if (noise_variance > 0.0) {
        const double sd = std::sqrt(noise_variance / 2.0);
        for (Eigen::Index i = 0; i < h.size(); ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            y += std::polar(1.0, -w.phases(i)) * Complex(sd * re, sd * im);
        }
    }
    return y;
}

double received_power(const BeamWeights& w, const ComplexVector& h, Complex symbol,
                      double noise_variance, Rng& rng) {
    return std::norm(received_signal(w, h, symbol, noise_variance, rng));
}

double nrsp(const RealVector& phases, const ComplexVector& h) {
    const double energy = h.squaredNorm();
    if (!(energy > 0.0)) throw InvalidArgument("nrsp: zero channel");
    return std::norm(effective_channel(phases, h)) / (static_cast<double>(h.size()) * energy);
}

Complex estimate_effective_gain(const std::vector<std::pair<Complex, Complex>>& pilots) {
    Complex num{0.0, 0.0};
    double den = 0.0;
    for (const auto& [y, s] : pilots) {
        num += std::conj(s) * y;
        den += std::norm(s);
    }
    if (!(den > 0.0)) throw InvalidArgument("estimate_effective_gain: no nonzero pilot symbol");
    return num / den;
}

double noise_variance_from_snr(double snr_db, double path_gain_abs2, double symbol_abs2) {
    if (!std::isfinite(snr_db)) throw InvalidArgument("snr_db must be finite");
    return path_gain_abs2 * symbol_abs2 / std::pow(10.0, snr_db / 10.0);
}

BeamPowerOracle::BeamPowerOracle(ComplexVector h, Complex symbol, double noise_variance, Rng rng)
    : h_(std::move(h)), symbol_(symbol), noise_variance_(noise_variance), rng_(std::move(rng)) {
    if (noise_variance_ < 0.0) throw InvalidArgument("noise variance must be >= 0");
}

double BeamPowerOracle::observe(Complex combined) {
    count_query();
    Complex y = combined * symbol_;
    if (noise_variance_ > 0.0) {
        const double sd = std::sqrt(static_cast<double>(h_.size()) * noise_variance_ / 2.0);
        const double re = rng_.normal();
        const double im = rng_.normal();
        y += Complex(sd * re, sd * im);
    }
    return std::norm(y);
}

double BeamPowerOracle::measure(const RealVector& phases) {
    return observe(effective_channel(phases, h_));
}

void BeamPowerOracle::set_reference(const RealVector& phases) {
    reference_sum_ = effective_channel(phases, h_);
    reference_ = phases;
    commits_since_refresh_ = 0;
}

Complex BeamPowerOracle::element_change(Eigen::Index index, double phase) const {
    if (index < 0 || index >= reference_.size()) {
        throw InvalidArgument("element index outside the reference setting");
    }
    return (std::polar(1.0, -phase) - std::polar(1.0, -reference_(index))) * h_(index);
}

double BeamPowerOracle::probe_element(Eigen::Index index, double phase) {
    return observe(reference_sum_ + element_change(index, phase));
}

void BeamPowerOracle::commit_element(Eigen::Index index, double phase) {
    reference_sum_ += element_change(index, phase);
    reference_(index) = phase;
    if (++commits_since_refresh_ >= kRefreshInterval) set_reference(reference_);
}

}  // namespace satbeam
