#include "asmbench/accounting/accounting.hpp"
#include "asmbench/core/errors.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asmbench;
using namespace asmbench::accounting;

namespace {

ImpactCatalog catalog() {
    ImpactCatalog c;
    c.add_indicator({"GWP", "kg CO2eq"});
    c.add_indicator({"EUT", "kg N eq"});
    c.add_item({"electricity", "kWh", {{"GWP", 0.5}, {"EUT", 1e-4}}, false});
    c.add_item({"u", "u", {{"GWP", 2.0}, {"EUT", 0.0}}, false});
    c.add_item({"credit", "u", {{"GWP", -0.5}, {"EUT", 0.0}}, true});
    return c;
}

InventoryEntry once(std::string item, double q, std::string unit) {
    return {std::move(item), q, std::move(unit), QuantityBasis::per_lifetime, Source::standalone};
}

PlantSnapshot converged_snapshot() {
    PlantSnapshot s;
    s.metrics.sludge_production = 2400.0;
    s.converged = true;
    return s;
}

}  // namespace

TEST(Lca, SingleItem) {
    Inventory inv;
    inv.add(once("electricity", 2.0, "kWh"));
    const auto r = lca_total(inv, catalog(), {"GWP"}, 1.0);
    EXPECT_DOUBLE_EQ(r.totals[0], 1.0);
}

TEST(Lca, EmptyInventory) {
    const auto r = lca_total({}, catalog(), {"GWP", "EUT"}, 10.0);
    EXPECT_EQ(r.totals, (std::vector<double>{0.0, 0.0}));
}

TEST(Lca, OffsetBreakdown) {
    Inventory inv;
    inv.add(once("u", 3.0, "u"));
    inv.add(once("credit", 4.0, "u"));
    const auto r = lca_total(inv, catalog(), {"GWP"}, 1.0);
    EXPECT_DOUBLE_EQ(r.totals[0], 4.0);
    EXPECT_DOUBLE_EQ(r.breakdown[0][0], 6.0);
    EXPECT_DOUBLE_EQ(r.breakdown[1][0], -2.0);
}

TEST(Lca, DailyQuantitiesOverHorizon) {
    Inventory inv;
    inv.add({"electricity", 10.0, "kWh", QuantityBasis::per_day, Source::unit});
    const auto r = lca_total(inv, catalog(), {"GWP"}, 2.0);
    EXPECT_DOUBLE_EQ(r.totals[0], 10.0 * 365.0 * 2.0 * 0.5);
}

TEST(Lca, BreakdownSumsToTotalAndIsLinear) {
    Inventory inv;
    for (int i = 0; i < 50; ++i) inv.add({"electricity", 0.1 * i + 0.37, "kWh", QuantityBasis::per_day, Source::unit});
    inv.add(once("credit", 123.456, "u"));
    const auto r = lca_total(inv, catalog(), {"GWP", "EUT"}, 20.0);
    for (std::size_t c = 0; c < r.totals.size(); ++c) {
        double sum = 0.0;
        for (const auto& row : r.breakdown) sum += row[c];
        EXPECT_LE(std::abs(sum - r.totals[c]), 1e-12 * std::abs(r.totals[c]));
    }
    Inventory twice = inv;
    for (auto& e : twice.entries) e.quantity *= 2.0;
    const auto r2 = lca_total(twice, catalog(), {"GWP", "EUT"}, 20.0);
    EXPECT_NEAR(r2.totals[0], 2.0 * r.totals[0], 1e-12 * std::abs(r.totals[0]));
}

TEST(Lca, Errors) {
    Inventory inv;
    inv.add(once("electricity", 2.0, "MJ"));
    EXPECT_THROW(lca_total(inv, catalog(), {"GWP"}, 1.0), ConfigError);
    inv.entries[0] = once("u", -1.0, "u");
    EXPECT_THROW(lca_total(inv, catalog(), {"GWP"}, 1.0), ConfigError);
    auto c = catalog();
    c.add_indicator({"ACD", "kg SO2eq"});
    inv.entries[0] = once("u", 1.0, "u");
    EXPECT_THROW(lca_total(inv, c, {"ACD"}, 1.0), ConfigError);  // missing factor is not zero
    EXPECT_THROW(c.add_item({"u", "u", {}, false}), ConfigError);
    EXPECT_THROW(c.add_item({"nan", "u", {{"GWP", std::nan("")}}, false}), ConfigError);
}

TEST(Tea, CapitalRecoveryFactor) {
    EXPECT_NEAR(capital_recovery_factor(0.05, 10.0), oracle::kCrf005x10, 1e-15);
    EXPECT_DOUBLE_EQ(capital_recovery_factor(0.0, 10.0), 0.1);
    for (double n : {1.0, 10.0, 30.0}) EXPECT_LE(std::abs(capital_recovery_factor(1e-12, n) - 1.0 / n), 1e-9);
    EXPECT_THROW(capital_recovery_factor(0.05, 0.0), ConfigError);
}

TEST(Tea, Annualize) {
    TEAInputs in;
    in.capital = {{"tank", 100.0, 10.0}};
    EXPECT_DOUBLE_EQ(tea_annualize(in).annualized_capital, 10.0);
    in.discount_rate = 0.05;
    EXPECT_NEAR(tea_annualize(in).annualized_capital, oracle::kAnnualized100, 1e-12);

    TEAInputs cancel;
    cancel.opex = {{"power", 10.0}};
    cancel.revenue = {{"sales", 10.0}};
    EXPECT_EQ(tea_annualize(cancel).net_annual_cost, 0.0);
}

TEST(Tea, PerCapitaAndBreakdown) {
    TEAInputs in;
    in.capital = {{"tank", 1000.0, 20.0}};
    in.opex = {{"power", 2.0}};
    in.population = 50.0;
    const auto r = tea_annualize(in);
    EXPECT_DOUBLE_EQ(r.net_annual_cost, 50.0 + 730.0);
    ASSERT_TRUE(r.per_capita);
    EXPECT_DOUBLE_EQ(*r.per_capita, 780.0 / 50.0);
    double sum = 0.0;
    for (const auto& [id, v] : r.breakdown) sum += v;
    EXPECT_DOUBLE_EQ(sum, r.net_annual_cost);
}

TEST(Tea, IncomeTaxOnNetRevenueOnly) {
    TEAInputs in;
    in.revenue = {{"sales", 10.0}};
    in.opex = {{"power", 4.0}};
    in.income_tax = 0.25;
    const auto r = tea_annualize(in);
    EXPECT_DOUBLE_EQ(r.tax, 0.25 * 365.0 * 6.0);
    EXPECT_DOUBLE_EQ(r.net_annual_cost, -365.0 * 6.0 + r.tax);
    in.opex = {{"power", 12.0}};
    EXPECT_EQ(tea_annualize(in).tax, 0.0);
}

TEST(Tea, Validation) {
    TEAInputs in;
    in.capital = {{"tank", 1.0, 0.0}};
    EXPECT_THROW(tea_annualize(in), ConfigError);
    in = {};
    in.discount_rate = -0.1;
    EXPECT_THROW(in.validate(), ConfigError);
    in = {};
    in.horizon = 0.5;
    EXPECT_THROW(in.validate(), ConfigError);
}

TEST(Bsm1Operating, AerationEnergy) {
    flowsheet::BSM1Settings s;
    EXPECT_NEAR(bsm1_aeration_energy(s), oracle::kBaselineAerationEnergy, 1e-9);
    const double base = bsm1_aeration_energy(s);
    s.K_La1 /= 2.0;
    s.K_La2 /= 2.0;
    EXPECT_NEAR(bsm1_aeration_energy(s), base / 2.0, 1e-12 * base);
    s.K_La1 = s.K_La2 = 0.0;
    EXPECT_EQ(bsm1_aeration_energy(s), 0.0);
}

TEST(Bsm1Operating, LinkedInventoryRefreshes) {
    const auto linked = bsm1_operating_inventory();
    auto snap = converged_snapshot();
    const auto a = linked.evaluate(snap);
    EXPECT_NEAR(a.quantity(std::string(kAerationItem)), oracle::kBaselineAerationEnergy, 1e-9);
    EXPECT_EQ(a.quantity(std::string(kSludgeItem)), 2400.0);

    auto same = linked.evaluate(snap);
    EXPECT_EQ(same.quantity(std::string(kSludgeItem)), a.quantity(std::string(kSludgeItem)));
    snap.settings.K_La2 = 0.0;
    snap.metrics.sludge_production = 1200.0;
    const auto b = linked.evaluate(snap);
    EXPECT_LT(b.quantity(std::string(kAerationItem)), a.quantity(std::string(kAerationItem)));
    EXPECT_EQ(b.quantity(std::string(kSludgeItem)), 1200.0);

    snap.converged = false;
    EXPECT_THROW(linked.evaluate(snap), ConvergenceError);
}

TEST(Bsm1Operating, PricedOperatingCosts) {
    const auto inv = bsm1_operating_inventory().evaluate(converged_snapshot());
    const auto opex = priced(inv, {{std::string(kAerationItem), 0.1}, {std::string(kSludgeItem), 0.05}});
    double total = 0.0;
    for (const auto& o : opex) total += o.per_day;
    EXPECT_NEAR(total, 0.1 * oracle::kBaselineAerationEnergy + 0.05 * 2400.0, 1e-9);
}

TEST(Bsm1Operating, CustomAerationModel) {
    const auto linked = bsm1_operating_inventory([](const flowsheet::BSM1Settings&) { return 42.0; });
    EXPECT_EQ(linked.evaluate(converged_snapshot()).quantity(std::string(kAerationItem)), 42.0);
}
