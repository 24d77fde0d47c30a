#include "asmbench/core/errors.hpp"
#include "asmbench/flowsheet/simulate.hpp"
#include "asmbench/units/clarifier.hpp"
#include "asmbench/units/cstr.hpp"
#include "asmbench/units/static_units.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asmbench;
using namespace asmbench::units;
namespace ix = asmbench::core::asm1;

namespace {

std::shared_ptr<const core::ComponentSet> cmps() { return core::default_asm1_components(); }

std::vector<double> influent() {
    return {30.0, 69.5, 51.2, 202.32, 28.17, 0.0, 0.0, 0.0, 0.0, 31.56, 6.95, 10.59, 7.0};
}

/// Feed with the given TSS, all of it as X_I.
core::WasteStream solids_feed(double tss, double flow) {
    std::vector<double> c(ix::kCount, 0.0);
    c[ix::X_I] = tss / 0.75;
    c[ix::S_S] = 5.0;
    return core::WasteStream(cmps(), c, flow);
}

}  // namespace

TEST(SettlingVelocity, ReferencePoint) {
    const SettlingParams p;
    EXPECT_NEAR(settling_velocity(200.0, 0.0, p), oracle::kSettlingAt200, 1e-9);
}

TEST(SettlingVelocity, NonSettleableAndLimits) {
    const SettlingParams p;
    EXPECT_EQ(settling_velocity(p.f_ns * 3000.0, 3000.0, p), 0.0);
    EXPECT_LT(settling_velocity(1e6, 0.0, p), 1e-12);
    // |dv/dX| <= v0 (r_h + r_p)
    const double step = 7.3;
    const double bound = step * p.v0 * (p.r_h + p.r_p);
    double prev = settling_velocity(0.0, 3000.0, p);
    for (double x = step; x < 20000.0; x += step) {
        const double v = settling_velocity(x, 3000.0, p);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, p.v0_prime);
        EXPECT_LE(std::abs(v - prev), bound);
        prev = v;
    }
}

TEST(SettlingParams, Validation) {
    SettlingParams p;
    p.v0_prime = 500.0;
    EXPECT_THROW(p.validate(), ConfigError);
    p = {};
    p.f_ns = 1.0;
    EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Cstr, NonReactiveEquilibrium) {
    CSTR tank("T", 100.0, cmps());
    const auto in = core::WasteStream(cmps(), influent(), 50.0);
    for (double d : cstr_derivative(tank, in, influent())) EXPECT_EQ(d, 0.0);
}

TEST(Cstr, DilutionTerm) {
    CSTR tank("T", 100.0, cmps());
    std::vector<double> c(ix::kCount, 0.0);
    const auto in = core::WasteStream(cmps(), influent(), 50.0);
    const auto d = cstr_derivative(tank, in, c);
    for (std::size_t i = 0; i < ix::kCount; ++i) EXPECT_DOUBLE_EQ(d[i], 0.5 * influent()[i]);
}

TEST(Cstr, AnoxicTankHasNoAerationTerm) {
    auto kin = std::make_shared<const kinetics::GujerMatrix>(kinetics::asm1_matrix({}));
    CSTR anoxic("A1", 1000.0, cmps(), kin);
    CSTR aerated("O1", 1000.0, cmps(), kin, kinetics::AerationProcess{240.0, 8.0});
    auto c = influent();
    c[ix::S_O] = 2.0;
    const auto in = core::WasteStream(cmps(), c, 0.0);
    const auto da = cstr_derivative(anoxic, in, c);
    const auto dk = cstr_derivative(aerated, in, c);
    EXPECT_DOUBLE_EQ(dk[ix::S_O] - da[ix::S_O], oracle::kAerationRate);
    for (std::size_t i = 0; i < ix::kCount; ++i)
        if (i != ix::S_O) EXPECT_EQ(dk[i], da[i]);
}

TEST(Cstr, RejectsZeroVolume) { EXPECT_THROW(CSTR("T", 0.0, cmps()), ConfigError); }

TEST(Clarifier, StateLayout) {
    Clarifier c("C1", {}, {}, 18831.0, cmps(), 0.75);
    EXPECT_EQ(c.state_size(), 10u + 7u);
    EXPECT_EQ(c.state_labels().front(), "TSS_1");
    EXPECT_EQ(c.state_labels()[10], "S_I");
    EXPECT_EQ(c.outlet_count(), 2u);
}

TEST(Clarifier, DerivativeFlowChecks) {
    Clarifier c("C1", {}, {}, 100.0, cmps(), 0.75);
    std::vector<double> state(c.state_size(), 0.0);
    const auto feed = solids_feed(3000.0, 300.0);
    EXPECT_THROW(clarifier_derivative(c, feed, state, {100.0, 150.0}), ConfigError);
    EXPECT_THROW(clarifier_derivative(c, feed, state, {0.0, 300.0}), ConfigError);
    EXPECT_NO_THROW(clarifier_derivative(c, feed, state, {100.0, 200.0}));
}

TEST(Clarifier, ZeroParticulatesDecay) {
    Clarifier c("C1", {}, {}, 100.0, cmps(), 0.75);
    std::vector<double> state(c.state_size(), 0.0);
    for (std::size_t j = 0; j < 10; ++j) state[j] = 100.0 * static_cast<double>(j + 1);
    std::vector<double> solubles(ix::kCount, 0.0);
    solubles[ix::S_S] = 4.0;
    const core::WasteStream feed(cmps(), solubles, 300.0);
    const auto d = clarifier_derivative(c, feed, state, {100.0, 200.0});
    // Solids only leave: the column inventory must fall.
    double inventory_rate = 0.0;
    for (std::size_t j = 0; j < 10; ++j) inventory_rate += d[j];
    EXPECT_LT(inventory_rate, 0.0);
    // Solubles relax toward the feed like one tank of volume A*H.
    EXPECT_DOUBLE_EQ(d[10 + 1], 300.0 / 6000.0 * 4.0);
}

TEST(Clarifier, PureConvectionSteadyState) {
    SettlingParams none;
    none.v0 = none.v0_prime = 0.0;
    flowsheet::SystemGraph g(cmps());
    auto unit = std::make_shared<Clarifier>("C1", ClarifierGeometry{}, none, 18831.0, cmps(), 0.75);
    std::vector<double> init(unit->state_size(), 0.0);
    const auto c1 = g.add_unit(unit, init);
    g.add_influent("feed", solids_feed(3000.0, 36892.0), c1);
    g.add_product("effluent", c1, 0);
    g.add_product("underflow", c1, 1);
    flowsheet::SystemOde ode(std::move(g));
    flowsheet::SteadyOptions opt;
    opt.t_min = 1.0;
    opt.tol_ss = 1e-9;
    const auto ss = flowsheet::steady_state(ode, ode.initial_state(), opt);
    EXPECT_NEAR(ss.state[0], oracle::kPureConvectionTopLayer, 1e-5);
    EXPECT_NEAR(ss.state[9], oracle::kPureConvectionBottomLayer, 1e-5);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_NEAR(ss.state[j], 3000.0, 1e-5);
    const auto eff = ode.stream("effluent", ss.state);
    const auto und = ode.stream("underflow", ss.state);
    EXPECT_NEAR(unit->tss(eff.concentrations()), 3000.0, 1e-5);
    EXPECT_NEAR(unit->tss(und.concentrations()), 3000.0, 1e-5);
    // Solubles are identical on both outlets.
    for (auto i : unit->soluble_indices()) EXPECT_EQ(eff.concentration(i), und.concentration(i));
}

TEST(Clarifier, OutletCompositionFollowsFeed) {
    Clarifier c("C1", {}, {}, 100.0, cmps(), 0.75);
    std::vector<double> state(c.state_size(), 0.0);
    state[0] = 15.0;
    state[9] = 6000.0;
    const auto conc = influent();
    const double q[2] = {200.0, 100.0};
    Feed feed{300.0, conc, q};
    std::vector<double> top(ix::kCount), bottom(ix::kCount);
    std::vector<std::span<double>> out{top, bottom};
    c.outlets(state, feed, out);
    EXPECT_NEAR(c.tss(top), 15.0, 1e-12);
    EXPECT_NEAR(c.tss(bottom), 6000.0, 1e-9);
    EXPECT_NEAR(top[ix::X_S] / top[ix::X_I], conc[ix::X_S] / conc[ix::X_I], 1e-12);
    EXPECT_NEAR(bottom[ix::X_ND] / bottom[ix::X_BH], conc[ix::X_ND] / conc[ix::X_BH], 1e-12);
}

TEST(StaticUnits, SplitterFractions) {
    auto s = Splitter::fractions("S", {0.6, 0.4});
    const core::WasteStream in(cmps(), influent(), 73784.0);
    const auto out = static_convert(s, std::vector<core::WasteStream>{in});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0].flow(), oracle::kSplit06Recycle, 1e-9);
    EXPECT_NEAR(out[1].flow(), oracle::kSplit04Forward, 1e-9);
    for (std::size_t i = 0; i < ix::kCount; ++i) {
        EXPECT_EQ(out[0].concentration(i), in.concentration(i));
        EXPECT_EQ(out[1].concentration(i), in.concentration(i));
    }
    EXPECT_THROW(Splitter::fractions("bad", {0.6, 0.5}), ConfigError);
}

TEST(StaticUnits, MixerThenUnitSplitIsIdentity) {
    Mixer m("M");
    auto s = Splitter::fractions("S", {1.0});
    const core::WasteStream in(cmps(), influent(), 123.0);
    const auto mixed = static_convert(m, std::vector<core::WasteStream>{in});
    const auto out = static_convert(s, mixed);
    EXPECT_EQ(out[0].flow(), in.flow());
    for (std::size_t i = 0; i < ix::kCount; ++i) EXPECT_EQ(out[0].concentration(i), in.concentration(i));
}

TEST(StaticUnits, ConversionReactor) {
    const core::WasteStream in(cmps(), influent(), 10.0);
    ConversionReactor none("R0", {{ix::S_S, 0.0, {{ix::S_I, 1.0}}}}, ix::kCount);
    const auto same = static_convert(none, std::vector<core::WasteStream>{in});
    for (std::size_t i = 0; i < ix::kCount; ++i) EXPECT_EQ(same[0].concentration(i), in.concentration(i));

    ConversionReactor full("R1", {{ix::S_S, 1.0, {{ix::S_I, 1.0}}}}, ix::kCount);
    const auto out = static_convert(full, std::vector<core::WasteStream>{in});
    EXPECT_EQ(out[0].concentration(ix::S_S), 0.0);
    EXPECT_DOUBLE_EQ(out[0].concentration(ix::S_I), 30.0 + 69.5);

    // Converting an absent component is a no-op.
    ConversionReactor absent("R2", {{ix::X_BA, 0.5, {{ix::S_I, 1.0}}}}, ix::kCount);
    const auto noop = static_convert(absent, std::vector<core::WasteStream>{in});
    for (std::size_t i = 0; i < ix::kCount; ++i) EXPECT_EQ(noop[0].concentration(i), in.concentration(i));

    EXPECT_THROW(ConversionReactor("bad", {{ix::S_S, 1.5, {}}}, ix::kCount), ConfigError);
}

TEST(StaticUnits, FixedAndRemainderFlows) {
    Splitter s("S", {OutletRule::fixed(30.0), OutletRule::remainder()});
    const auto q = outlet_flows(s, 100.0);
    EXPECT_EQ(q[0], 30.0);
    EXPECT_EQ(q[1], 70.0);
    EXPECT_THROW(outlet_flows(s, 10.0), ConfigError);
}
