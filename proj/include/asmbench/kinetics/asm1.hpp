#pragma once

#include "asmbench/core/composite.hpp"
#include "asmbench/kinetics/process.hpp"

#include <array>
#include <string_view>

namespace asmbench::kinetics {

/// ASM1 stoichiometric and kinetic parameters at 20 degC (baseline values are the
/// open-loop benchmark defaults).
struct ASM1ParameterSet {
    // stoichiometric
    double Y_H = 0.67;
    double Y_A = 0.24;
    double f_Pobs = 0.21;
    double i_XB = 0.08;
    double i_XP = 0.06;
    double f_SS_COD = 0.75;
    // kinetic
    double mu_H = 4.0;
    double K_S = 10.0;
    double K_OH = 0.2;
    double K_NO = 0.5;
    double b_H = 0.3;
    double mu_A = 0.5;
    double K_NH = 1.0;
    double K_OA = 0.4;
    double b_A = 0.05;
    double eta_g = 0.8;
    double k_a = 0.05;
    double k_h = 3.0;
    double K_X = 0.1;
    double eta_h = 0.8;

    /// Death-regeneration inert fraction derived from the observed fraction:
    /// f_P = f_Pobs (1 - Y_H) / (1 - Y_H f_Pobs).
    double f_P() const noexcept { return f_Pobs * (1.0 - Y_H) / (1.0 - Y_H * f_Pobs); }

    core::CompositeParams composite_params() const noexcept { return {f_SS_COD, i_XB, i_XP, f_P()}; }

    void validate() const;

    /// Names in the canonical order; each maps to one field.
    static const std::array<std::string_view, 20>& names();
    double& at(std::string_view name);
    double at(std::string_view name) const;
};

/// Eight-process ASM1 Gujer matrix; S_O in growth processes and S_NO in anoxic growth are
/// completed by COD conservation.
GujerMatrix asm1_matrix(const ASM1ParameterSet& params);

/// Unresolved ASM1 processes as authored (unknowns still marked), for inspection and tests.
std::vector<KineticProcess> asm1_processes(const ASM1ParameterSet& params);

/// Conservation weights used to complete the ASM1 matrix.
ConservationWeights asm1_conservation_weights(const ASM1ParameterSet& params);

/// Diffused aeration acting on S_O: rate = K_La (DO_sat - S_O).
struct AerationProcess {
    double K_La = 0.0;    // 1/d
    double DO_sat = 8.0;  // g-O2/m3

    void validate() const;
    double rate(double S_O) const noexcept { return K_La * (DO_sat - S_O); }
};

}  // namespace asmbench::kinetics
