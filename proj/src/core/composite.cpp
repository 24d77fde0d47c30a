#include "asmbench/core/composite.hpp"

#include "asmbench/core/errors.hpp"

#include <string>

namespace asmbench::core {

std::string_view to_string(Composite c) {
    switch (c) {
    case Composite::COD: return "COD";
    case Composite::BOD5: return "BOD5";
    case Composite::TKN: return "TKN";
    case Composite::TN: return "TN";
    case Composite::TSS: return "TSS";
    }
    return "?";
}

Composite parse_composite(std::string_view name) {
    for (auto c : kAllComposites)
        if (to_string(c) == name) return c;
    throw ConfigError("unknown composite '" + std::string(name) + "'");
}

void CompositeParams::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0)) throw ConfigError(std::string(name) + " must lie in (0, 1)");
    };
    check(f_SS_COD, "f_SS_COD");
    check(i_XB, "i_XB");
    check(i_XP, "i_XP");
    check(f_P, "f_P");
}

double composite(std::span<const double> c, Composite which, const CompositeParams& p) {
    using namespace asm1;
    if (c.size() != kCount) throw ConfigError("composite: expected an ASM1 concentration vector");
    const double biomass = c[X_BH] + c[X_BA];
    switch (which) {
    case Composite::COD:
        return c[S_S] + c[S_I] + c[X_S] + c[X_I] + biomass + c[X_P];
    case Composite::TSS:
        return p.f_SS_COD * (c[X_I] + c[X_S] + biomass + c[X_P]);
    case Composite::TKN:
        return c[S_NH] + c[S_ND] + c[X_ND] + p.i_XB * biomass + p.i_XP * (c[X_P] + c[X_I]);
    case Composite::TN:
        return composite(c, Composite::TKN, p) + c[S_NO];
    case Composite::BOD5:
        return 0.25 * (c[S_S] + c[X_S] + (1.0 - p.f_P) * biomass);
    }
    throw ConfigError("composite: unknown kind");
}

double composite(const WasteStream& s, Composite which, const CompositeParams& p) {
    if (!s.components().same_schema(*default_asm1_components()))
        throw ConfigError("composite: stream is not on the ASM1 component set");
    return composite(s.concentrations(), which, p);
}

double mass_flow(const WasteStream& s, Composite which, const CompositeParams& p) {
    return composite(s, which, p) * s.flow() / 1000.0;
}

}  // namespace asmbench::core
