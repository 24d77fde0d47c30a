#pragma once

#include "asmbench/flowsheet/bsm1.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asmbench::accounting {

// ---- LCA -------------------------------------------------------------------------

struct ImpactIndicator {
    std::string id;    // e.g. GWP
    std::string unit;  // e.g. kg CO2eq
};

struct ImpactItem {
    std::string id;
    std::string functional_unit;            // e.g. kWh, kg, m3
    std::map<std::string, double> factors;  // indicator id -> impact per functional unit
    bool offset = false;                    // credits may carry negative quantities
};

enum class Source { stream, unit, standalone };
std::string_view to_string(Source s);
Source parse_source(std::string_view name);

enum class QuantityBasis { per_day, per_lifetime };

struct InventoryEntry {
    std::string item;
    double quantity = 0.0;
    std::string unit;  // must equal the item's functional unit
    QuantityBasis basis = QuantityBasis::per_day;
    Source source = Source::standalone;
};

/// Indicators and items with unique ids and finite factors.
class ImpactCatalog {
public:
    void add_indicator(ImpactIndicator indicator);
    void add_item(ImpactItem item);

    const std::vector<ImpactIndicator>& indicators() const noexcept { return indicators_; }
    const ImpactItem& item(std::string_view id) const;
    bool has_item(std::string_view id) const;
    std::vector<std::string> indicator_ids() const;

private:
    std::vector<ImpactIndicator> indicators_;
    std::vector<ImpactItem> items_;
};

struct Inventory {
    std::vector<InventoryEntry> entries;

    void add(InventoryEntry e) { entries.push_back(std::move(e)); }
    /// Quantity of the first entry for an item; ConfigError if absent.
    double quantity(std::string_view item) const;
};

struct LcaResult {
    std::vector<std::string> indicators;
    std::vector<double> totals;                   // per indicator
    std::vector<std::string> items;               // per inventory entry
    std::vector<std::vector<double>> breakdown;   // [entry][indicator]; columns sum to totals
};

/// Totals over `horizon_years`: per-day quantities count 365 days a year, lifetime
/// quantities once. Every entry needs a factor for every requested indicator.
LcaResult lca_total(const Inventory& inventory, const ImpactCatalog& catalog, const std::vector<std::string>& indicators,
                    double horizon_years);

// ---- TEA -------------------------------------------------------------------------

struct CapitalItem {
    std::string id;
    double cost = 0.0;
    double lifetime = 1.0;  // yr
};

struct DailyAmount {
    std::string id;
    double per_day = 0.0;
};

struct TEAInputs {
    std::vector<CapitalItem> capital;
    std::vector<DailyAmount> opex;
    std::vector<DailyAmount> revenue;
    double discount_rate = 0.0;
    double horizon = 1.0;  // yr
    double income_tax = 0.0;
    std::optional<double> population;

    void validate() const;
};

/// r (1+r)^n / ((1+r)^n - 1), and 1/n at r = 0.
double capital_recovery_factor(double r, double n);

struct TEAResult {
    double annualized_capital = 0.0;
    double annual_opex = 0.0;
    double annual_revenue = 0.0;
    double tax = 0.0;
    double net_annual_cost = 0.0;
    std::optional<double> per_capita;
    std::vector<std::pair<std::string, double>> breakdown;  // annual amounts; revenues negative, tax last
};

/// Net annual cost = annualized capital + 365 (opex - revenue) + tax, where tax applies to
/// positive net annual revenue only.
TEAResult tea_annualize(const TEAInputs& inputs);

// ---- BSM1 operating bindings -----------------------------------------------------

/// State an inventory is linked to: plant settings and the converged effluent metrics.
struct PlantSnapshot {
    flowsheet::BSM1Settings settings;
    flowsheet::EffluentMetrics metrics;
    bool converged = false;
};

using QuantityFn = std::function<double(const PlantSnapshot&)>;

struct LinkedEntry {
    std::string item;
    std::string unit;
    Source source = Source::standalone;
    QuantityFn quantity;
};

/// Inventory entries whose quantities are recomputed from each new snapshot.
class LinkedInventory {
public:
    void link(LinkedEntry entry);
    /// ConvergenceError on an unconverged snapshot.
    Inventory evaluate(const PlantSnapshot& snapshot) const;
    const std::vector<LinkedEntry>& entries() const noexcept { return entries_; }

private:
    std::vector<LinkedEntry> entries_;
};

using AerationEnergyModel = std::function<double(const flowsheet::BSM1Settings&)>;

/// (DO_sat / 1800) * sum over aerated tanks of V K_La, kWh/d.
double bsm1_aeration_energy(const flowsheet::BSM1Settings& s);

inline constexpr std::string_view kAerationItem = "aeration_electricity";
inline constexpr std::string_view kSludgeItem = "sludge_disposal";

/// Aeration electricity (kWh/d, unit source) and sludge disposal (kg/d, stream source).
LinkedInventory bsm1_operating_inventory(AerationEnergyModel aeration = bsm1_aeration_energy);

/// Daily operating costs from an inventory and unit prices keyed by item id.
std::vector<DailyAmount> priced(const Inventory& inventory, const std::map<std::string, double>& prices);

}  // namespace asmbench::accounting
