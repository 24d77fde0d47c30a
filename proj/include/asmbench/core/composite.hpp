#pragma once

#include "asmbench/core/stream.hpp"

#include <array>
#include <span>
#include <string_view>

namespace asmbench::core {

enum class Composite { COD, BOD5, TKN, TN, TSS };

inline constexpr std::array<Composite, 5> kAllComposites{Composite::COD, Composite::BOD5, Composite::TKN,
                                                         Composite::TN, Composite::TSS};

std::string_view to_string(Composite c);
/// Throws ConfigError for unknown names.
Composite parse_composite(std::string_view name);

struct CompositeParams {
    double f_SS_COD = 0.75;  // g TSS per g particulate COD
    double i_XB = 0.08;      // g-N per g-COD biomass
    double i_XP = 0.06;      // g-N per g-COD inert particulates
    double f_P = 0.08;       // inert fraction of decayed biomass (Gujer-matrix form)

    void validate() const;
};

/// Composite on a raw ASM1-aligned concentration vector.
double composite(std::span<const double> asm1_conc, Composite which, const CompositeParams& p);

/// Composite on a stream; the stream must use the default ASM1 layout.
double composite(const WasteStream& s, Composite which, const CompositeParams& p);

/// Composite mass flow in kg/d.
double mass_flow(const WasteStream& s, Composite which, const CompositeParams& p);

}  // namespace asmbench::core
