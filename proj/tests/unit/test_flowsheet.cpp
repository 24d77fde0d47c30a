#include "asmbench/core/errors.hpp"
#include "asmbench/flowsheet/bsm1.hpp"
#include "asmbench/units/cstr.hpp"
#include "asmbench/units/static_units.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace asmbench;
using namespace asmbench::flowsheet;
namespace ix = asmbench::core::asm1;

namespace {

std::shared_ptr<const core::ComponentSet> cmps() { return core::default_asm1_components(); }

/// One non-reactive tank fed at HRT 1 d with S_S = 10.
SystemGraph single_tank(double c_in = 10.0) {
    SystemGraph g(cmps());
    const auto t = g.add_unit(std::make_shared<units::CSTR>("T", 100.0, cmps()));
    std::vector<double> c(ix::kCount, 0.0);
    c[ix::S_S] = c_in;
    c[ix::S_NH] = 2.0 * c_in;
    g.add_influent("in", core::WasteStream(cmps(), c, 100.0), t);
    g.add_product("out", t, 0);
    return g;
}

/// Same plant with units registered in a different order; streams keep their names.
SystemGraph reordered(const SystemGraph& g, const std::vector<std::size_t>& order) {
    SystemGraph out(g.component_set());
    std::map<std::size_t, std::size_t> remap;
    for (auto u : order) remap[u] = out.add_unit(g.units()[u], g.initial_state(u));
    for (const auto& e : g.streams()) {
        if (e.influent)
            out.add_influent(e.name, *e.influent, remap.at(*e.consumer));
        else if (!e.consumer)
            out.add_product(e.name, remap.at(*e.producer), e.producer_outlet);
        else
            out.connect(e.name, remap.at(*e.producer), e.producer_outlet, remap.at(*e.consumer));
    }
    return out;
}

struct Baseline {
    BSM1Settings settings;
    kinetics::ASM1ParameterSet asm1;
    SystemOde ode{build_bsm1(settings, asm1)};
    SteadyState steady = steady_state(ode, ode.initial_state());
};

Baseline& baseline() {
    static Baseline b;
    return b;
}

}  // namespace

TEST(Bsm1Layout, VolumesAndFlows) {
    const BSM1Settings s;
    SystemOde ode(build_bsm1(s, {}));
    const auto& g = ode.graph();
    std::vector<double> volumes;
    for (auto id : kBsm1Reactors) volumes.push_back(dynamic_cast<const units::CSTR&>(g.unit(id)).volume());
    EXPECT_EQ(volumes, (std::vector<double>{1000, 1000, 1333, 1333, 1333}));
    EXPECT_NEAR(ode.flow("RWW"), 3.0 * 18446.0, 1e-6);
    EXPECT_NEAR(ode.flow("underflow"), oracle::kUnderflowBaseline, 1e-9);
    EXPECT_NEAR(ode.flow("RAS"), 18446.0, 1e-9);
    EXPECT_NEAR(ode.flow("WAS"), 385.0, 1e-9);
    EXPECT_NEAR(s.internal_split(), 0.6, 1e-15);
}

TEST(Bsm1Layout, StateDimension) {
    SystemOde ode(build_bsm1({}, {}));
    EXPECT_EQ(ode.dimension(), 5u * 13u + 10u + 7u);
    const auto labels = ode.state_labels();
    EXPECT_EQ(labels.front(), "A1.S_I");
    EXPECT_EQ(labels[65], "C1.TSS_1");
}

TEST(Bsm1Layout, InconsistentFlowsRejected) {
    BSM1Settings s;
    s.Q_WAS = 20000.0;
    EXPECT_THROW(build_bsm1(s, {}), ConfigError);
    s = {};
    s.Q_RAS = -1.0;
    EXPECT_THROW(build_bsm1(s, {}), ConfigError);
}

TEST(Bsm1Layout, PlantFlowBalance) {
    for (double q_was : {300.0, 385.0, 900.0}) {
        BSM1Settings s;
        s.Q_WAS = q_was;
        s.Q_intr = 2.5 * s.Q_in;
        SystemOde ode(build_bsm1(s, {}));
        const double in = ode.flow("influent");
        const double out = ode.flow("effluent") + ode.flow("WAS");
        EXPECT_LE(std::abs(in - out) / in, 1e-9);
    }
}

TEST(Integrate, FirstOrderTankMatchesClosedForm) {
    SystemOde ode(single_tank());
    const std::vector<double> init(ix::kCount, 0.0);
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
    const auto tr = integrate(ode, 2.0, init, grid);
    ASSERT_EQ(tr.times, grid);
    EXPECT_NEAR(tr.states[2][ix::S_S], oracle::kFirstOrderAtOneHRT, 1e-6 * oracle::kFirstOrderAtOneHRT);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double exact = 10.0 * (1.0 - std::exp(-grid[k]));
        EXPECT_NEAR(tr.states[k][ix::S_S], exact, 1e-6 * std::max(exact, 1e-3));
        EXPECT_NEAR(tr.states[k][ix::S_NH], 2.0 * exact, 2e-6 * std::max(exact, 1e-3));
    }
}

TEST(Integrate, ZeroHorizonReturnsInitialState) {
    SystemOde ode(build_bsm1({}, {}));
    const auto init = ode.initial_state();
    const auto tr = integrate(ode, 0.0, init);
    ASSERT_EQ(tr.times.size(), 1u);
    EXPECT_EQ(tr.times[0], 0.0);
    EXPECT_EQ(tr.states[0], init);
}

TEST(Integrate, OutputGrid) {
    const auto g = output_grid(50.0, 1.0);
    EXPECT_EQ(g.size(), 51u);
    EXPECT_EQ(g.back(), 50.0);
    EXPECT_EQ(output_grid(1.0, 0.3).back(), 1.0);
}

TEST(Integrate, RejectsBadInitialState) {
    SystemOde ode(single_tank());
    std::vector<double> init(ix::kCount, 0.0);
    init[0] = std::nan("");
    EXPECT_ANY_THROW(integrate(ode, 1.0, init));
    EXPECT_ANY_THROW(integrate(ode, 1.0, std::vector<double>(3, 0.0)));
}

TEST(IntegratorOptions, Validation) {
    IntegratorOptions o;
    o.rtol = 0.0;
    EXPECT_THROW(o.validate(), ConfigError);
}

TEST(SteadyState, TankReachesInfluent) {
    SystemOde ode(single_tank());
    SteadyOptions opt;
    opt.t_min = 1.0;
    const auto ss = steady_state(ode, std::vector<double>(ix::kCount, 0.0), opt);
    EXPECT_NEAR(ss.state[ix::S_S], 10.0, 1e-3);
    EXPECT_LE(ss.max_scaled_derivative, opt.tol_ss);
}

TEST(SteadyState, NonConvergenceIsAnError) {
    SystemOde ode(build_bsm1({}, {}));
    SteadyOptions opt;
    opt.t_min = 1.0;
    opt.t_max = 2.0;
    EXPECT_THROW(steady_state(ode, ode.initial_state(), opt), ConvergenceError);
}

TEST(SystemOde, DerivativeIsDeterministic) {
    SystemOde ode(build_bsm1({}, {}));
    const auto y = ode.initial_state();
    const auto a = ode.derivative(y);
    const auto b = ode.derivative(y);
    EXPECT_EQ(a, b);
}

TEST(SystemOde, RegistrationOrderDoesNotChangeDynamics) {
    const auto g = build_bsm1({}, {});
    SystemOde ref(g);
    std::vector<std::size_t> order(g.units().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
    SystemOde perm(reordered(g, order));
    EXPECT_NE(ref.graph().unit_index("A1"), perm.graph().unit_index("A1"));
    EXPECT_EQ(ref.state_labels(), perm.state_labels());

    const auto y_ref = ref.initial_state();
    const auto y_perm = perm.initial_state();
    const auto d_ref = ref.derivative(y_ref);
    const auto d_perm = perm.derivative(y_perm);
    const auto labels_ref = ref.state_labels();
    const auto labels_perm = perm.state_labels();
    for (std::size_t i = 0; i < labels_ref.size(); ++i) {
        const auto j = static_cast<std::size_t>(
            std::find(labels_perm.begin(), labels_perm.end(), labels_ref[i]) - labels_perm.begin());
        ASSERT_LT(j, labels_perm.size());
        EXPECT_EQ(y_ref[i], y_perm[j]);
        EXPECT_NEAR(d_ref[i], d_perm[j], 1e-9 * std::max(1.0, std::abs(d_ref[i])));
    }
}

TEST(SystemOde, RegistrationOrderDoesNotChangeMetrics) {
    auto& b = baseline();
    const auto g = build_bsm1(b.settings, b.asm1);
    std::vector<std::size_t> order{7, 6, 5, 4, 3, 2, 1, 0};
    SystemOde perm(reordered(g, order));
    const auto ss = steady_state(perm, perm.initial_state());
    const auto cp = b.asm1.composite_params();
    const auto m_ref = effluent_metrics(b.ode, b.steady, cp).values();
    const auto m_perm = effluent_metrics(perm, ss, cp).values();
    for (std::size_t k = 0; k < m_ref.size(); ++k) EXPECT_NEAR(m_perm[k], m_ref[k], 1e-4 * std::abs(m_ref[k]));
}

TEST(SystemGraph, DanglingOutletRejected) {
    SystemGraph g(cmps());
    const auto t = g.add_unit(std::make_shared<units::CSTR>("T", 100.0, cmps()));
    g.add_influent("in", core::WasteStream::empty(cmps(), 1.0), t);
    EXPECT_THROW(SystemOde{g}, ConfigError);
}

TEST(Bsm1Steady, BaselineMeetsDischargeLimits) {
    auto& b = baseline();
    const auto m = effluent_metrics(b.ode, b.steady, b.asm1.composite_params());
    EXPECT_LE(m.TN, 18.0);
    EXPECT_LE(m.COD, 100.0);
    EXPECT_LE(m.BOD5, 10.0);
    EXPECT_LE(m.TSS, 30.0);
    EXPECT_GT(m.sludge_production, 0.0);
    EXPECT_GT(m.SRT, 0.0);
}

TEST(Bsm1Steady, ClarifierConservesEveryComponent) {
    auto& b = baseline();
    const auto c = b.ode.graph().unit_index("C1");
    const auto feed = b.ode.feed(c, b.steady.state);
    const double q_feed = b.ode.flow("treated");
    const auto eff = b.ode.stream("effluent", b.steady.state);
    const auto und = b.ode.stream("underflow", b.steady.state);
    for (std::size_t i = 0; i < ix::kCount; ++i) {
        const double in = q_feed * feed[i];
        if (in == 0.0) continue;
        const double out = eff.flow() * eff.concentration(i) + und.flow() * und.concentration(i);
        EXPECT_LE(std::abs(in - out) / in, 1e-6) << i;
    }
}

TEST(Bsm1Steady, MetricsRejectUnconvergedState) {
    auto& b = baseline();
    SteadyState early{b.ode.initial_state(), 0.0, 0.0, 0};
    EXPECT_THROW(effluent_metrics(b.ode, early, b.asm1.composite_params()), ConvergenceError);
}

TEST(Bsm1Steady, SludgeProductionLinearInUnderflowTss) {
    auto& b = baseline();
    auto y = b.steady.state;
    const auto cp = b.asm1.composite_params();
    const double base = effluent_metrics_at(b.ode, y, cp).sludge_production;
    const auto off = b.ode.offset("C1");
    for (std::size_t j = 0; j < 10; ++j) y[off + j] *= 2.0;
    EXPECT_NEAR(effluent_metrics_at(b.ode, y, cp).sludge_production, 2.0 * base, 1e-9 * base);
}
