#pragma once

#include "asmbench/core/stream.hpp"
#include "asmbench/units/unit.hpp"

namespace asmbench::units {

/// Double-exponential settling velocity parameters (Takacs form).
struct SettlingParams {
    double v0 = 474.0;         // maximum theoretical settling velocity, m/d
    double v0_prime = 250.0;   // maximum practical settling velocity, m/d
    double r_h = 5.76e-4;      // hindered-zone parameter, m3/g
    double r_p = 2.86e-3;      // flocculant-zone parameter, m3/g
    double f_ns = 2.28e-3;     // non-settleable fraction of feed TSS
    double X_t = 3000.0;       // threshold TSS for flux limitation above the feed, g/m3

    void validate() const;
};

/// v_s = max(0, min(v0', v0 (exp(-r_h X*) - exp(-r_p X*)))), X* = max(0, X - f_ns X_feed).
double settling_velocity(double X, double X_feed, const SettlingParams& p);

struct ClarifierGeometry {
    double height = 4.0;           // m
    double area = 1500.0;          // m2
    std::size_t n_layers = 10;
    std::size_t feed_layer = 5;    // 1 = top
};

/// One-dimensional layered secondary clarifier. Particulates settle as TSS through the layers;
/// solubles are one completely mixed volume A*H. Outlet particulate composition follows the
/// instantaneous feed composition. Outlet 0 is the effluent (top), outlet 1 the underflow.
class Clarifier final : public Unit {
public:
    Clarifier(std::string id, ClarifierGeometry geometry, SettlingParams settling, double underflow,
              std::shared_ptr<const core::ComponentSet> components, double f_SS_COD);

    const ClarifierGeometry& geometry() const noexcept { return geometry_; }
    const SettlingParams& settling() const noexcept { return settling_; }
    double underflow() const noexcept { return underflow_; }
    double f_SS_COD() const noexcept { return f_SS_COD_; }
    double layer_volume() const noexcept { return geometry_.area * geometry_.height / static_cast<double>(geometry_.n_layers); }
    const std::vector<std::size_t>& soluble_indices() const noexcept { return soluble_; }
    const std::vector<std::size_t>& particulate_indices() const noexcept { return particulate_; }

    /// TSS of a component-aligned concentration vector via f_SS_COD times particulate COD.
    double tss(std::span<const double> conc) const;

    std::size_t outlet_count() const override { return 2; }
    OutletRule outlet_rule(std::size_t k) const override;
    std::size_t state_size() const override { return geometry_.n_layers + soluble_.size(); }
    std::vector<std::string> state_labels() const override;
    bool outlets_need_feed() const override { return true; }
    void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const override;
    void derivative(std::span<const double> state, const Feed& feed, std::span<double> dstate) const override;

private:
    ClarifierGeometry geometry_;
    SettlingParams settling_;
    double underflow_;
    std::shared_ptr<const core::ComponentSet> components_;
    double f_SS_COD_;
    std::vector<std::size_t> soluble_;
    std::vector<std::size_t> particulate_;
    std::vector<double> tss_weight_;  // f_SS_COD for COD-basis particulates, 0 otherwise
};

struct ClarifierFlows {
    double under = 0.0;
    double effluent = 0.0;
};

/// Time derivative of the clarifier state for an explicit feed and outlet flows.
/// Throws ConfigError if the flows do not add up or the underflow is zero while solids are held.
std::vector<double> clarifier_derivative(const Clarifier& unit, const core::WasteStream& feed,
                                         std::span<const double> state, ClarifierFlows flows);

}  // namespace asmbench::units
