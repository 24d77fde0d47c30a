#pragma once

#include "asmbench/flowsheet/simulate.hpp"
#include "asmbench/kinetics/asm1.hpp"
#include "asmbench/units/clarifier.hpp"

#include <array>

namespace asmbench::flowsheet {

/// Open-loop BSM1 layout, operating settings, and initial conditions.
struct BSM1Settings {
    double Q_in = 18446.0;       // m3/d
    double T_water = 293.15;     // K
    double DO_sat = 8.0;         // g-O2/m3
    std::array<double, core::asm1::kCount> influent{30.0, 69.5, 51.2, 202.32, 28.17, 0.0, 0.0,
                                                    0.0,  0.0,  31.56, 6.95, 10.59, 7.0};
    double V_a = 1000.0;         // each anoxic tank, m3
    double V_o = 1333.0;         // each aerobic tank, m3
    double K_La1 = 240.0;        // O1 and O2, 1/d
    double K_La2 = 84.0;         // O3, 1/d
    double Q_RAS = 18446.0;      // m3/d
    double Q_WAS = 385.0;        // m3/d
    double Q_intr = 3.0 * 18446.0;  // m3/d
    double T_air = 293.15;       // K
    double P = 101325.0;         // Pa
    units::ClarifierGeometry clarifier{};
    units::SettlingParams settling{};

    // Initial conditions: all five tanks share one vector; clarifier solubles follow its feed.
    std::array<double, core::asm1::kCount> reactor_init{0.0, 5.0, 1000.0, 100.0, 500.0, 100.0, 100.0,
                                                        2.0, 20.0, 2.0, 1.0, 1.0, 7.0};
    std::vector<double> clarifier_tss_init{10.0, 20.0, 40.0, 70.0, 200.0, 300.0, 350.0, 350.0, 2000.0, 4000.0};

    /// Share of O3 outflow returned to A1: Q_intr / (Q_intr + Q_in + Q_RAS).
    double internal_split() const { return Q_intr / (Q_intr + Q_in + Q_RAS); }

    void validate() const;

    /// Scalar settings addressable by name (decision variables, DO_sat, and plant constants).
    static const std::vector<std::string_view>& scalar_names();
    double& at(std::string_view name);
    double at(std::string_view name) const;
};

/// Reactor unit ids in flow order.
inline constexpr std::array<std::string_view, 5> kBsm1Reactors{"A1", "A2", "O1", "O2", "O3"};

/// A1 -> A2 -> O1 -> O2 -> O3 -> splitter (internal recycle to A1) -> clarifier C1;
/// clarifier underflow split into RAS (to A1) and WAS.
SystemGraph build_bsm1(const BSM1Settings& settings, const kinetics::ASM1ParameterSet& asm1);

struct EffluentMetrics {
    double COD = 0.0;
    double BOD5 = 0.0;
    double TSS = 0.0;
    double TN = 0.0;
    double TKN = 0.0;
    double sludge_production = 0.0;  // kg-TSS/d
    double SRT = 0.0;                // d; active biomass in reactors and clarifier over biomass in WAS + effluent

    static const std::array<std::string_view, 7>& names();
    std::array<double, 7> values() const { return {COD, BOD5, TSS, TN, TKN, sludge_production, SRT}; }
};

/// Metrics of a converged BSM1 state. Throws ConvergenceError if the state's scaled
/// derivative exceeds tol_ss.
EffluentMetrics effluent_metrics(SystemOde& ode, const SteadyState& steady, const core::CompositeParams& params,
                                 double tol_ss = 1e-5);

/// Metrics of an arbitrary BSM1 state, no convergence check.
EffluentMetrics effluent_metrics_at(SystemOde& ode, std::span<const double> y, const core::CompositeParams& params);

}  // namespace asmbench::flowsheet
