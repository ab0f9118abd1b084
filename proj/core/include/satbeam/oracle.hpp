#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include <Eigen/Core>

namespace satbeam {

using RealVector = Eigen::VectorXd;

/// Scalar power measurement as a function of the phase-shifter settings.
/// Every call counts as one query.
class PowerOracle {
public:
    virtual ~PowerOracle() = default;

    virtual double measure(const RealVector& phases) = 0;

    /// Single-shifter protocol: fix a reference setting, then probe or commit
    /// one element at a time. The default implementation falls back to
    /// full measurements.
    virtual void set_reference(const RealVector& phases) { reference_ = phases; }

    /// Power of the reference with element `index` set to `phase`.
    virtual double probe_element(Eigen::Index index, double phase) {
        RealVector probe = reference_;
        probe(index) = phase;
        return measure(probe);
    }

    virtual void commit_element(Eigen::Index index, double phase) { reference_(index) = phase; }

    std::size_t queries() const noexcept { return queries_; }

protected:
    void count_query() noexcept { ++queries_; }

    RealVector reference_;

private:
    std::size_t queries_ = 0;
};

/// Adapts an arbitrary objective, e.g. an analytic test function.
class FunctionOracle final : public PowerOracle {
public:
    explicit FunctionOracle(std::function<double(const RealVector&)> fn) : fn_(std::move(fn)) {}

    double measure(const RealVector& phases) override {
        count_query();
        return fn_(phases);
    }

private:
    std::function<double(const RealVector&)> fn_;
};

}  // namespace satbeam
