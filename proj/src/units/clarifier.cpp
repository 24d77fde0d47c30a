#include "asmbench/units/clarifier.hpp"

#include "asmbench/core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace asmbench::units {

void SettlingParams::validate() const {
    for (double v : {v0, v0_prime, r_h, r_p, f_ns, X_t})
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("settling parameters must be finite and >= 0");
    if (v0_prime > v0) throw ConfigError("settling: v0_prime must not exceed v0");
    if (f_ns >= 1.0) throw ConfigError("settling: f_ns must lie in [0, 1)");
}

namespace {

// min(a, b) rounded over a band of relative width kFluxSmoothing. The exact minimum makes the
// equal-concentration plateau below the feed layer a switching surface that never settles.
constexpr double kFluxSmoothing = 1e-5;

double limited_flux(double a, double b) {
    const double eps = kFluxSmoothing * std::max(a, b);
    const double d = a - b;
    return 0.5 * (a + b - std::sqrt(d * d + eps * eps));
}

}  // namespace

double settling_velocity(double X, double X_feed, const SettlingParams& p) {
    const double x_star = std::max(0.0, X - p.f_ns * X_feed);
    const double v = p.v0 * (std::exp(-p.r_h * x_star) - std::exp(-p.r_p * x_star));
    return std::max(0.0, std::min(p.v0_prime, v));
}

Clarifier::Clarifier(std::string id, ClarifierGeometry geometry, SettlingParams settling, double underflow,
                     std::shared_ptr<const core::ComponentSet> components, double f_SS_COD)
    : Unit(std::move(id)), geometry_(geometry), settling_(settling), underflow_(underflow),
      components_(std::move(components)), f_SS_COD_(f_SS_COD) {
    const auto& name = this->id();
    if (!components_) throw ConfigError("clarifier '" + name + "': no component set");
    if (!(geometry_.height > 0.0) || !(geometry_.area > 0.0))
        throw ConfigError("clarifier '" + name + "': height and area must be > 0");
    if (geometry_.n_layers < 1) throw ConfigError("clarifier '" + name + "': needs at least one layer");
    if (geometry_.feed_layer < 1 || geometry_.feed_layer > geometry_.n_layers)
        throw ConfigError("clarifier '" + name + "': feed layer must lie in [1, n_layers]");
    if (!(underflow_ >= 0.0) || !std::isfinite(underflow_))
        throw ConfigError("clarifier '" + name + "': underflow must be finite and >= 0");
    if (!(f_SS_COD_ > 0.0)) throw ConfigError("clarifier '" + name + "': f_SS_COD must be > 0");
    settling_.validate();
    soluble_ = components_->soluble_indices();
    particulate_ = components_->particulate_indices();
    tss_weight_.assign(components_->size(), 0.0);
    for (auto i : particulate_)
        if ((*components_)[i].basis == core::Basis::COD) tss_weight_[i] = f_SS_COD_;
}

double Clarifier::tss(std::span<const double> conc) const {
    double s = 0.0;
    for (auto i : particulate_) s += tss_weight_[i] * conc[i];
    return s;
}

OutletRule Clarifier::outlet_rule(std::size_t k) const {
    return k == 0 ? OutletRule::remainder() : OutletRule::fixed(underflow_);
}

std::vector<std::string> Clarifier::state_labels() const {
    std::vector<std::string> out;
    for (std::size_t j = 1; j <= geometry_.n_layers; ++j) out.push_back("TSS_" + std::to_string(j));
    for (auto i : soluble_) out.push_back((*components_)[i].id);
    return out;
}

void Clarifier::outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const {
    const std::size_t nl = geometry_.n_layers;
    const double feed_tss = tss(feed.conc);
    const double top = state[0];
    const double bottom = state[nl - 1];
    for (std::size_t k = 0; k < soluble_.size(); ++k) {
        out[0][soluble_[k]] = state[nl + k];
        out[1][soluble_[k]] = state[nl + k];
    }
    for (auto i : particulate_) {
        const double frac = feed_tss > 0.0 ? feed.conc[i] / feed_tss : 0.0;
        out[0][i] = frac * top;
        out[1][i] = frac * bottom;
    }
}

void Clarifier::derivative(std::span<const double> state, const Feed& feed, std::span<double> dstate) const {
    const std::size_t nl = geometry_.n_layers;
    const std::size_t f = geometry_.feed_layer - 1;
    const double area = geometry_.area;
    const double dz = geometry_.height / static_cast<double>(nl);
    const double q_eff = feed.outlet_flows[0];
    const double q_under = feed.outlet_flows[1];
    const double v_up = q_eff / area;
    const double v_dn = q_under / area;
    const double x_feed = tss(feed.conc);
    const auto& p = settling_;

    // Gravity flux potential per layer, then the limited flux across each interface j -> j+1.
    double js_buf[64];
    double flux_buf[64];
    std::vector<double> js_heap, flux_heap;
    double* js = js_buf;
    double* flux = flux_buf;
    if (nl > 64) {
        js_heap.resize(nl);
        flux_heap.resize(nl);
        js = js_heap.data();
        flux = flux_heap.data();
    }
    for (std::size_t j = 0; j < nl; ++j) {
        const double x = std::max(0.0, state[j]);
        js[j] = settling_velocity(x, x_feed, p) * x;
    }
    for (std::size_t j = 0; j + 1 < nl; ++j) {
        if (j >= f || state[j + 1] > p.X_t)
            flux[j] = limited_flux(js[j], js[j + 1]);
        else
            flux[j] = js[j];
    }

    for (std::size_t j = 0; j < nl; ++j) {
        const double in = j > 0 ? flux[j - 1] : 0.0;
        const double out = j + 1 < nl ? flux[j] : 0.0;
        double bulk;
        if (j < f) {
            bulk = v_up * (state[j + 1] - state[j]);
        } else if (j == f) {
            bulk = feed.flow * x_feed / area - (v_up + v_dn) * state[j];
        } else {
            bulk = v_dn * (state[j - 1] - state[j]);
        }
        dstate[j] = (bulk + in - out) / dz;
    }

    const double dilution = feed.flow / (area * geometry_.height);
    for (std::size_t k = 0; k < soluble_.size(); ++k)
        dstate[nl + k] = dilution * (feed.conc[soluble_[k]] - state[nl + k]);
}

std::vector<double> clarifier_derivative(const Clarifier& unit, const core::WasteStream& feed,
                                         std::span<const double> state, ClarifierFlows flows) {
    if (state.size() != unit.state_size()) throw ConfigError("clarifier_derivative: state size mismatch");
    if (flows.under < 0.0 || flows.effluent < 0.0)
        throw ConfigError("clarifier_derivative: negative outlet flow");
    const double total = flows.under + flows.effluent;
    if (std::abs(total - feed.flow()) > 1e-9 * std::max(1.0, feed.flow()))
        throw ConfigError("clarifier_derivative: underflow + effluent must equal the feed flow");
    if (flows.under == 0.0) {
        const auto nl = unit.geometry().n_layers;
        const bool holds_solids =
            std::any_of(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(nl), [](double x) { return x > 0.0; });
        if (holds_solids || unit.tss(feed.concentrations()) > 0.0)
            throw ConfigError("clarifier '" + unit.id() + "': zero underflow with a nonzero solids inventory");
    }
    const double outlet_flows[2] = {flows.effluent, flows.under};
    Feed f{feed.flow(), feed.concentrations(), outlet_flows};
    std::vector<double> d(state.size());
    unit.derivative(state, f, d);
    return d;
}

}  // namespace asmbench::units
