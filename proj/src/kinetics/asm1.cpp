#include "asmbench/kinetics/asm1.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <string>

namespace asmbench::kinetics {

namespace {

template <class Self>
auto* field(Self& p, std::string_view name) {
    if (name == "Y_H") return &p.Y_H;
    if (name == "Y_A") return &p.Y_A;
    if (name == "f_Pobs") return &p.f_Pobs;
    if (name == "i_XB") return &p.i_XB;
    if (name == "i_XP") return &p.i_XP;
    if (name == "f_SS_COD") return &p.f_SS_COD;
    if (name == "mu_H") return &p.mu_H;
    if (name == "K_S") return &p.K_S;
    if (name == "K_OH") return &p.K_OH;
    if (name == "K_NO") return &p.K_NO;
    if (name == "b_H") return &p.b_H;
    if (name == "mu_A") return &p.mu_A;
    if (name == "K_NH") return &p.K_NH;
    if (name == "K_OA") return &p.K_OA;
    if (name == "b_A") return &p.b_A;
    if (name == "eta_g") return &p.eta_g;
    if (name == "k_a") return &p.k_a;
    if (name == "k_h") return &p.k_h;
    if (name == "K_X") return &p.K_X;
    if (name == "eta_h") return &p.eta_h;
    throw ConfigError("unknown ASM1 parameter '" + std::string(name) + "'");
}

inline double monod(double s, double k) { return s / (k + s); }

}  // namespace

const std::array<std::string_view, 20>& ASM1ParameterSet::names() {
    static const std::array<std::string_view, 20> n{"Y_H", "Y_A",  "f_Pobs", "i_XB", "i_XP", "f_SS_COD", "mu_H",
                                                    "K_S", "K_OH", "K_NO",   "b_H",  "mu_A", "K_NH",     "K_OA",
                                                    "b_A", "eta_g", "k_a",   "k_h",  "K_X",  "eta_h"};
    return n;
}

double& ASM1ParameterSet::at(std::string_view name) { return *field(*this, name); }
double ASM1ParameterSet::at(std::string_view name) const { return *field(*this, name); }

void ASM1ParameterSet::validate() const {
    for (auto name : names()) {
        const double v = at(name);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("ASM1 parameter " + std::string(name) + " must be finite and > 0");
    }
    for (auto name : {"Y_H", "Y_A", "f_Pobs", "eta_g", "eta_h", "K_X"}) {
        if (at(name) > 1.0) throw ConfigError("ASM1 parameter " + std::string(name) + " must be <= 1");
    }
    const double fp = f_P();
    if (!(fp > 0.0 && fp < 1.0)) throw ConfigError("derived f_P must lie in (0, 1)");
    composite_params().validate();
}

ConservationWeights asm1_conservation_weights(const ASM1ParameterSet& p) {
    const auto cmps = core::ComponentSet::asm1(p.i_XB, p.i_XP);
    return {{Conserved::COD, cmps.weights(Conserved::COD)},
            {Conserved::N, cmps.weights(Conserved::N)},
            {Conserved::charge, cmps.weights(Conserved::charge)}};
}

std::vector<KineticProcess> asm1_processes(const ASM1ParameterSet& p) {
    using namespace core::asm1;
    p.validate();
    const double fP = p.f_P();
    auto blank = [] { return std::vector<Coefficient>(kCount, 0.0); };
    std::vector<KineticProcess> out;

    {
        auto nu = blank();
        nu[S_S] = -1.0 / p.Y_H;
        nu[X_BH] = 1.0;
        nu[S_O] = kUnknown;
        nu[S_NH] = -p.i_XB;
        nu[S_ALK] = -p.i_XB / 14.0;
        out.push_back({"aerobic_growth_heterotrophs", std::move(nu),
                       [p](std::span<const double> c) {
                           return p.mu_H * monod(c[S_S], p.K_S) * monod(c[S_O], p.K_OH) * c[X_BH];
                       },
                       {Conserved::COD}});
    }
    {
        auto nu = blank();
        nu[S_S] = -1.0 / p.Y_H;
        nu[X_BH] = 1.0;
        nu[S_NO] = kUnknown;
        nu[S_NH] = -p.i_XB;
        nu[S_ALK] = (1.0 - p.Y_H) / (14.0 * 2.86 * p.Y_H) - p.i_XB / 14.0;
        out.push_back({"anoxic_growth_heterotrophs", std::move(nu),
                       [p](std::span<const double> c) {
                           return p.mu_H * monod(c[S_S], p.K_S) * (p.K_OH / (p.K_OH + c[S_O])) *
                                  monod(c[S_NO], p.K_NO) * p.eta_g * c[X_BH];
                       },
                       {Conserved::COD}});
    }
    {
        auto nu = blank();
        nu[X_BA] = 1.0;
        nu[S_O] = kUnknown;
        nu[S_NH] = -p.i_XB - 1.0 / p.Y_A;
        nu[S_NO] = 1.0 / p.Y_A;
        nu[S_ALK] = -p.i_XB / 14.0 - 1.0 / (7.0 * p.Y_A);
        out.push_back({"aerobic_growth_autotrophs", std::move(nu),
                       [p](std::span<const double> c) {
                           return p.mu_A * monod(c[S_NH], p.K_NH) * monod(c[S_O], p.K_OA) * c[X_BA];
                       },
                       {Conserved::COD}});
    }
    auto decay = [&](std::size_t biomass, double rate, std::string id) {
        auto nu = blank();
        nu[biomass] = -1.0;
        nu[X_P] = fP;
        nu[X_S] = 1.0 - fP;
        nu[X_ND] = p.i_XB - fP * p.i_XP;
        out.push_back({std::move(id), std::move(nu),
                       [rate, biomass](std::span<const double> c) { return rate * c[biomass]; },
                       {}});
    };
    decay(X_BH, p.b_H, "decay_heterotrophs");
    decay(X_BA, p.b_A, "decay_autotrophs");
    {
        auto nu = blank();
        nu[S_ND] = -1.0;
        nu[S_NH] = 1.0;
        nu[S_ALK] = 1.0 / 14.0;
        out.push_back({"ammonification", std::move(nu),
                       [p](std::span<const double> c) { return p.k_a * c[S_ND] * c[X_BH]; }, {}});
    }
    // (X_S/X_BH)/(K_X + X_S/X_BH) X_BH rewritten as X_S X_BH/(K_X X_BH + X_S); zero at X_BH = 0.
    auto hydrolysis = [p](std::span<const double> c) {
        const double denom = p.K_X * c[X_BH] + c[X_S];
        if (c[X_BH] <= 0.0 || denom <= 0.0) return 0.0;
        const double sat = c[X_S] * c[X_BH] / denom;
        const double electron = monod(c[S_O], p.K_OH) +
                                p.eta_h * (p.K_OH / (p.K_OH + c[S_O])) * monod(c[S_NO], p.K_NO);
        return p.k_h * sat * electron;
    };
    {
        auto nu = blank();
        nu[X_S] = -1.0;
        nu[S_S] = 1.0;
        out.push_back({"hydrolysis_organics", std::move(nu), hydrolysis, {}});
    }
    {
        auto nu = blank();
        nu[X_ND] = -1.0;
        nu[S_ND] = 1.0;
        out.push_back({"hydrolysis_organic_nitrogen", std::move(nu),
                       [hydrolysis](std::span<const double> c) {
                           if (c[X_S] <= 0.0) return 0.0;
                           return hydrolysis(c) * c[X_ND] / c[X_S];
                       },
                       {}});
    }
    return out;
}

GujerMatrix asm1_matrix(const ASM1ParameterSet& params) {
    const auto weights = asm1_conservation_weights(params);
    auto processes = asm1_processes(params);
    for (auto& proc : processes) proc = complete_stoichiometry(proc, weights);
    auto cmps = std::make_shared<const core::ComponentSet>(core::ComponentSet::asm1(params.i_XB, params.i_XP));
    return GujerMatrix(std::move(cmps), std::move(processes));
}

void AerationProcess::validate() const {
    if (!(K_La >= 0.0) || !std::isfinite(K_La)) throw ConfigError("K_La must be finite and >= 0");
    if (!(DO_sat > 0.0) || !std::isfinite(DO_sat)) throw ConfigError("DO_sat must be finite and > 0");
}

}  // namespace asmbench::kinetics
