#include "asmbench/flowsheet/bsm1.hpp"

#include "asmbench/core/errors.hpp"
#include "asmbench/units/clarifier.hpp"
#include "asmbench/units/cstr.hpp"
#include "asmbench/units/static_units.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace asmbench::flowsheet {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("BSM1: ") + name + " must be finite and > 0");
}

void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string("BSM1: ") + name + " must be finite and >= 0");
}

template <typename S>
auto& field(S& s, std::string_view name) {
    if (name == "Q_in") return s.Q_in;
    if (name == "T_water") return s.T_water;
    if (name == "DO_sat") return s.DO_sat;
    if (name == "V_a") return s.V_a;
    if (name == "V_o") return s.V_o;
    if (name == "K_La1") return s.K_La1;
    if (name == "K_La2") return s.K_La2;
    if (name == "Q_RAS") return s.Q_RAS;
    if (name == "Q_WAS") return s.Q_WAS;
    if (name == "Q_intr") return s.Q_intr;
    if (name == "T_air") return s.T_air;
    if (name == "P") return s.P;
    throw ConfigError("unknown BSM1 setting '" + std::string(name) + "'");
}

}  // namespace

void BSM1Settings::validate() const {
    require_positive(Q_in, "Q_in");
    require_positive(T_water, "T_water");
    require_positive(DO_sat, "DO_sat");
    require_positive(V_a, "V_a");
    require_positive(V_o, "V_o");
    require_non_negative(K_La1, "K_La1");
    require_non_negative(K_La2, "K_La2");
    require_non_negative(Q_RAS, "Q_RAS");
    require_positive(Q_WAS, "Q_WAS");
    require_non_negative(Q_intr, "Q_intr");
    require_positive(T_air, "T_air");
    require_positive(P, "P");
    for (double c : influent) require_non_negative(c, "influent concentration");
    for (double c : reactor_init) require_non_negative(c, "initial concentration");
    if (clarifier.n_layers == 0 || clarifier.feed_layer < 1 || clarifier.feed_layer > clarifier.n_layers)
        throw ConfigError("BSM1: clarifier feed layer must lie within 1..n_layers");
    if (clarifier_tss_init.size() != clarifier.n_layers)
        throw ConfigError("BSM1: clarifier TSS initial profile must have one value per layer");
    for (double c : clarifier_tss_init) require_non_negative(c, "clarifier initial TSS");
    if (Q_WAS >= Q_in) {
        std::ostringstream os;
        os << "BSM1: inconsistent flows, Q_WAS (" << Q_WAS << ") leaves no effluent from Q_in (" << Q_in << ")";
        throw ConfigError(os.str());
    }
    settling.validate();
}

const std::vector<std::string_view>& BSM1Settings::scalar_names() {
    static const std::vector<std::string_view> names{"Q_in",  "T_water", "DO_sat", "V_a",    "V_o",   "K_La1",
                                                     "K_La2", "Q_RAS",   "Q_WAS",  "Q_intr", "T_air", "P"};
    return names;
}

double& BSM1Settings::at(std::string_view name) { return field(*this, name); }
double BSM1Settings::at(std::string_view name) const { return field(*this, name); }

SystemGraph build_bsm1(const BSM1Settings& s, const kinetics::ASM1ParameterSet& asm1) {
    s.validate();
    asm1.validate();

    auto cmps = std::make_shared<const core::ComponentSet>(core::ComponentSet::asm1(asm1.i_XB, asm1.i_XP));
    auto kin = std::make_shared<const kinetics::GujerMatrix>(kinetics::asm1_matrix(asm1));
    SystemGraph g(cmps);

    const std::vector<double> init(s.reactor_init.begin(), s.reactor_init.end());
    auto reactor = [&](const char* id, double volume, std::optional<double> kla) {
        std::optional<kinetics::AerationProcess> aer;
        if (kla) aer = kinetics::AerationProcess{*kla, s.DO_sat};
        return g.add_unit(std::make_shared<units::CSTR>(id, volume, cmps, kin, aer), init);
    };
    const auto a1 = reactor("A1", s.V_a, std::nullopt);
    const auto a2 = reactor("A2", s.V_a, std::nullopt);
    const auto o1 = reactor("O1", s.V_o, s.K_La1);
    const auto o2 = reactor("O2", s.V_o, s.K_La1);
    const auto o3 = reactor("O3", s.V_o, s.K_La2);

    const auto s1 = g.add_unit(std::make_shared<units::Splitter>(
        "S1", std::vector<units::OutletRule>{units::OutletRule::fraction(s.internal_split()), units::OutletRule::remainder()}));

    const double underflow = s.Q_RAS + s.Q_WAS;
    auto clar = std::make_shared<units::Clarifier>("C1", s.clarifier, s.settling, underflow, cmps, asm1.f_SS_COD);
    std::vector<double> cinit(s.clarifier_tss_init);
    for (auto i : clar->soluble_indices()) cinit.push_back(s.reactor_init[i]);
    const auto c1 = g.add_unit(clar, std::move(cinit));

    const auto s2 = g.add_unit(std::make_shared<units::Splitter>(
        "S2", std::vector<units::OutletRule>{units::OutletRule::fixed(s.Q_RAS), units::OutletRule::remainder()}));

    std::vector<double> inf(s.influent.begin(), s.influent.end());
    g.add_influent("influent", core::WasteStream(cmps, std::move(inf), s.Q_in, s.T_water, s.P), a1);
    g.connect("ws1", a1, 0, a2);
    g.connect("ws2", a2, 0, o1);
    g.connect("ws3", o1, 0, o2);
    g.connect("ws4", o2, 0, o3);
    g.connect("ws5", o3, 0, s1);
    g.connect("RWW", s1, 0, a1);
    g.connect("treated", s1, 1, c1);
    g.add_product("effluent", c1, 0);
    g.connect("underflow", c1, 1, s2);
    g.connect("RAS", s2, 0, a1);
    g.add_product("WAS", s2, 1);
    return g;
}

const std::array<std::string_view, 7>& EffluentMetrics::names() {
    static const std::array<std::string_view, 7> n{"COD", "BOD5", "TSS", "TN", "TKN", "sludge_production", "SRT"};
    return n;
}

EffluentMetrics effluent_metrics_at(SystemOde& ode, std::span<const double> y, const core::CompositeParams& params) {
    using core::Composite;
    const auto eff = ode.stream("effluent", y);
    const auto under = ode.stream("underflow", y);
    const double q_was = ode.flow("WAS");
    const double q_eff = eff.flow();

    EffluentMetrics m;
    m.COD = core::composite(eff, Composite::COD, params);
    m.BOD5 = core::composite(eff, Composite::BOD5, params);
    m.TSS = core::composite(eff, Composite::TSS, params);
    m.TN = core::composite(eff, Composite::TN, params);
    m.TKN = core::composite(eff, Composite::TKN, params);
    const double tss_u = core::composite(under, Composite::TSS, params);
    m.sludge_production = q_was * tss_u / 1000.0;

    // Sludge age on active biomass, counting the clarifier's solids inventory.
    namespace ix = core::asm1;
    auto biomass = [](std::span<const double> c) { return c[ix::X_BH] + c[ix::X_BA]; };
    const auto& g = ode.graph();
    double held = 0.0;
    for (auto id : kBsm1Reactors) {
        const auto u = g.unit_index(id);
        const auto& cstr = dynamic_cast<const units::CSTR&>(*g.units()[u]);
        held += cstr.volume() * biomass(ode.unit_block(u, y));
    }
    const auto c = g.unit_index("C1");
    const auto& clar = dynamic_cast<const units::Clarifier&>(*g.units()[c]);
    const auto feed = ode.feed(c, y);
    const double feed_tss = clar.tss(feed);
    if (feed_tss > 0.0) {
        const auto layers = ode.unit_block(c, y);
        double solids = 0.0;
        for (std::size_t j = 0; j < clar.geometry().n_layers; ++j) solids += clar.layer_volume() * layers[j];
        held += solids * biomass(feed) / feed_tss;
    }
    const double lost = q_was * biomass(under.concentrations()) + q_eff * biomass(eff.concentrations());
    m.SRT = lost > 0.0 ? held / lost : std::numeric_limits<double>::infinity();
    return m;
}

EffluentMetrics effluent_metrics(SystemOde& ode, const SteadyState& steady, const core::CompositeParams& params,
                                 double tol_ss) {
    const double d = max_scaled_derivative(ode, steady.state);
    if (!(d <= tol_ss)) {
        std::ostringstream os;
        os << "effluent_metrics: state is not converged (max scaled derivative " << d << " > " << tol_ss << ")";
        throw ConvergenceError(os.str());
    }
    return effluent_metrics_at(ode, steady.state, params);
}

}  // namespace asmbench::flowsheet
