#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asmbench::core {

enum class Basis { COD, N, O2, mol };
enum class PhaseClass { soluble, particulate };
enum class Conserved { COD, N, charge };

std::string_view to_string(Basis b);
std::string_view to_string(Conserved c);

struct Component {
    std::string id;
    std::string description;
    Basis basis = Basis::COD;
    PhaseClass phase = PhaseClass::soluble;
    /// Amount of each conserved quantity carried per unit of the state variable.
    std::map<Conserved, double> content;

    bool particulate() const noexcept { return phase == PhaseClass::particulate; }
    double weight(Conserved c) const;
};

/// Ordered component schema. The order defines the layout of every state vector.
class ComponentSet {
public:
    ComponentSet() = default;
    explicit ComponentSet(std::vector<Component> components);

    std::size_t size() const noexcept { return components_.size(); }
    const Component& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Component>& components() const noexcept { return components_; }
    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }

    std::optional<std::size_t> find(std::string_view id) const;
    std::size_t index_of(std::string_view id) const;
    std::vector<std::string> ids() const;

    /// Weight vector of one conserved quantity, aligned to the component order.
    std::vector<double> weights(Conserved c) const;

    std::vector<std::size_t> soluble_indices() const;
    std::vector<std::size_t> particulate_indices() const;

    bool same_schema(const ComponentSet& other) const;

    /// The 13 ASM1 state variables with nitrogen contents i_XB (biomass) and i_XP (inerts).
    static ComponentSet asm1(double i_XB = 0.08, double i_XP = 0.06);

private:
    std::vector<Component> components_;
};

/// Fixed ASM1 state layout.
namespace asm1 {
inline constexpr std::size_t S_I = 0;
inline constexpr std::size_t S_S = 1;
inline constexpr std::size_t X_I = 2;
inline constexpr std::size_t X_S = 3;
inline constexpr std::size_t X_BH = 4;
inline constexpr std::size_t X_BA = 5;
inline constexpr std::size_t X_P = 6;
inline constexpr std::size_t S_O = 7;
inline constexpr std::size_t S_NO = 8;
inline constexpr std::size_t S_NH = 9;
inline constexpr std::size_t S_ND = 10;
inline constexpr std::size_t X_ND = 11;
inline constexpr std::size_t S_ALK = 12;
inline constexpr std::size_t kCount = 13;

// COD equivalents of nitrogen redox states relative to N2 (g-O2 per g-N).
inline constexpr double kNitrateCOD = -2.86;
inline constexpr double kReducedNitrogenCOD = 1.71;
}  // namespace asm1

}  // namespace asmbench::core
