#include "asmbench/accounting/accounting.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <sstream>

namespace asmbench::accounting {

std::string_view to_string(Source s) {
    switch (s) {
        case Source::stream: return "stream";
        case Source::unit: return "unit";
        case Source::standalone: return "standalone";
    }
    return "";
}

Source parse_source(std::string_view name) {
    if (name == "stream") return Source::stream;
    if (name == "unit") return Source::unit;
    if (name == "standalone") return Source::standalone;
    throw ConfigError("unknown inventory source '" + std::string(name) + "'");
}

void ImpactCatalog::add_indicator(ImpactIndicator indicator) {
    if (indicator.id.empty()) throw ConfigError("impact indicator id must not be empty");
    for (const auto& i : indicators_)
        if (i.id == indicator.id) throw ConfigError("duplicate impact indicator '" + indicator.id + "'");
    indicators_.push_back(std::move(indicator));
}

void ImpactCatalog::add_item(ImpactItem item) {
    if (item.id.empty()) throw ConfigError("impact item id must not be empty");
    if (has_item(item.id)) throw ConfigError("duplicate impact item '" + item.id + "'");
    for (const auto& [ind, cf] : item.factors)
        if (!std::isfinite(cf)) throw ConfigError("impact item '" + item.id + "': factor for '" + ind + "' is not finite");
    items_.push_back(std::move(item));
}

bool ImpactCatalog::has_item(std::string_view id) const {
    for (const auto& i : items_)
        if (i.id == id) return true;
    return false;
}

const ImpactItem& ImpactCatalog::item(std::string_view id) const {
    for (const auto& i : items_)
        if (i.id == id) return i;
    throw ConfigError("unknown impact item '" + std::string(id) + "'");
}

std::vector<std::string> ImpactCatalog::indicator_ids() const {
    std::vector<std::string> out;
    for (const auto& i : indicators_) out.push_back(i.id);
    return out;
}

double Inventory::quantity(std::string_view item) const {
    for (const auto& e : entries)
        if (e.item == item) return e.quantity;
    throw ConfigError("inventory has no entry for '" + std::string(item) + "'");
}

LcaResult lca_total(const Inventory& inventory, const ImpactCatalog& catalog, const std::vector<std::string>& indicators,
                    double horizon_years) {
    if (!(horizon_years > 0.0) || !std::isfinite(horizon_years)) throw ConfigError("LCA horizon must be finite and > 0");
    for (const auto& id : indicators) {
        bool known = false;
        for (const auto& i : catalog.indicators()) known = known || i.id == id;
        if (!known) throw ConfigError("unknown impact indicator '" + id + "'");
    }
    LcaResult r;
    r.indicators = indicators;
    r.totals.assign(indicators.size(), 0.0);
    for (const auto& e : inventory.entries) {
        const auto& item = catalog.item(e.item);
        if (e.unit != item.functional_unit)
            throw ConfigError("inventory entry '" + e.item + "' is in '" + e.unit + "' but the item's functional unit is '" +
                              item.functional_unit + "'");
        if (!std::isfinite(e.quantity)) throw ConfigError("inventory entry '" + e.item + "' has a non-finite quantity");
        if (e.quantity < 0.0 && !item.offset)
            throw ConfigError("inventory entry '" + e.item + "' is negative but the item is not an offset");
        const double q = e.basis == QuantityBasis::per_day ? e.quantity * 365.0 * horizon_years : e.quantity;
        std::vector<double> row;
        for (std::size_t c = 0; c < indicators.size(); ++c) {
            const auto cf = item.factors.find(indicators[c]);
            if (cf == item.factors.end())
                throw ConfigError("impact item '" + e.item + "' has no characterization factor for '" + indicators[c] + "'");
            row.push_back(q * cf->second);
            r.totals[c] += row.back();
        }
        r.items.push_back(e.item);
        r.breakdown.push_back(std::move(row));
    }
    return r;
}

void TEAInputs::validate() const {
    if (!(discount_rate >= 0.0) || !std::isfinite(discount_rate)) throw ConfigError("TEA: discount rate must be >= 0");
    if (!(horizon >= 1.0) || !std::isfinite(horizon)) throw ConfigError("TEA: horizon must be >= 1 yr");
    if (!(income_tax >= 0.0 && income_tax <= 1.0)) throw ConfigError("TEA: income tax must lie in [0, 1]");
    for (const auto& c : capital) {
        if (!(c.lifetime > 0.0) || !std::isfinite(c.lifetime))
            throw ConfigError("TEA: capital item '" + c.id + "' needs a positive lifetime");
        if (!std::isfinite(c.cost)) throw ConfigError("TEA: capital item '" + c.id + "' has a non-finite cost");
    }
    for (const auto* list : {&opex, &revenue})
        for (const auto& a : *list)
            if (!std::isfinite(a.per_day)) throw ConfigError("TEA: '" + a.id + "' has a non-finite daily amount");
    if (population && !(*population > 0.0)) throw ConfigError("TEA: population must be > 0");
}

double capital_recovery_factor(double r, double n) {
    if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("capital recovery factor: lifetime must be > 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("capital recovery factor: rate must be >= 0");
    if (r == 0.0) return 1.0 / n;
    const double g = std::expm1(n * std::log1p(r));  // (1+r)^n - 1
    return r * (1.0 + g) / g;
}

TEAResult tea_annualize(const TEAInputs& in) {
    in.validate();
    TEAResult r;
    for (const auto& c : in.capital) {
        const double a = c.cost * capital_recovery_factor(in.discount_rate, c.lifetime);
        r.annualized_capital += a;
        r.breakdown.emplace_back(c.id, a);
    }
    for (const auto& o : in.opex) {
        r.annual_opex += 365.0 * o.per_day;
        r.breakdown.emplace_back(o.id, 365.0 * o.per_day);
    }
    for (const auto& v : in.revenue) {
        r.annual_revenue += 365.0 * v.per_day;
        r.breakdown.emplace_back(v.id, -365.0 * v.per_day);
    }
    const double profit = r.annual_revenue - r.annual_opex - r.annualized_capital;
    r.tax = profit > 0.0 ? in.income_tax * profit : 0.0;
    r.breakdown.emplace_back("income_tax", r.tax);
    r.net_annual_cost = r.annualized_capital + (r.annual_opex - r.annual_revenue) + r.tax;
    if (in.population) r.per_capita = r.net_annual_cost / *in.population;
    return r;
}

void LinkedInventory::link(LinkedEntry entry) {
    if (entry.item.empty()) throw ConfigError("linked inventory entry needs an item id");
    if (!entry.quantity) throw ConfigError("linked inventory entry '" + entry.item + "' has no quantity function");
    entries_.push_back(std::move(entry));
}

Inventory LinkedInventory::evaluate(const PlantSnapshot& snapshot) const {
    if (!snapshot.converged) throw ConvergenceError("operating inventory needs a converged steady state");
    Inventory inv;
    for (const auto& e : entries_)
        inv.add({e.item, e.quantity(snapshot), e.unit, QuantityBasis::per_day, e.source});
    return inv;
}

double bsm1_aeration_energy(const flowsheet::BSM1Settings& s) {
    return s.DO_sat / 1800.0 * (s.V_o * s.K_La1 + s.V_o * s.K_La1 + s.V_o * s.K_La2);
}

LinkedInventory bsm1_operating_inventory(AerationEnergyModel aeration) {
    if (!aeration) throw ConfigError("aeration energy model is empty");
    LinkedInventory inv;
    inv.link({std::string(kAerationItem), "kWh", Source::unit,
              [aeration = std::move(aeration)](const PlantSnapshot& p) { return aeration(p.settings); }});
    inv.link({std::string(kSludgeItem), "kg", Source::stream,
              [](const PlantSnapshot& p) { return p.metrics.sludge_production; }});
    return inv;
}

std::vector<DailyAmount> priced(const Inventory& inventory, const std::map<std::string, double>& prices) {
    std::vector<DailyAmount> out;
    for (const auto& e : inventory.entries) {
        const auto it = prices.find(e.item);
        if (it == prices.end()) continue;
        if (e.basis != QuantityBasis::per_day)
            throw ConfigError("only daily inventory quantities can be priced as operating costs");
        out.push_back({e.item, e.quantity * it->second});
    }
    return out;
}

}  // namespace asmbench::accounting
