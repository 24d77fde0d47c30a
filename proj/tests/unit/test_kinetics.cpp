#include "asmbench/core/errors.hpp"
#include "asmbench/kinetics/asm1.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace asmbench;
using namespace asmbench::kinetics;
namespace ix = asmbench::core::asm1;

namespace {

std::vector<double> cod_weights_growth() {
    std::vector<double> w(ix::kCount, 0.0);
    w[ix::S_S] = 1.0;
    w[ix::X_BH] = 1.0;
    w[ix::S_O] = -1.0;
    w[ix::S_NO] = -2.86;
    return w;
}

KineticProcess heterotroph_growth(double Y_H, std::size_t acceptor) {
    KineticProcess p;
    p.id = "growth";
    p.stoichiometry.assign(ix::kCount, 0.0);
    p.stoichiometry[ix::S_S] = -1.0 / Y_H;
    p.stoichiometry[ix::X_BH] = 1.0;
    p.stoichiometry[acceptor] = kUnknown;
    p.conserved_for = {Conserved::COD};
    return p;
}

std::vector<double> sample_state(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(ix::kCount);
    const double scale[ix::kCount] = {30, 20, 1000, 100, 2000, 150, 600, 3, 15, 10, 2, 5, 7};
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = scale[i] * u(gen);
    return c;
}

}  // namespace

TEST(CompleteStoichiometry, AerobicGrowthOxygen) {
    const ConservationWeights w{{Conserved::COD, cod_weights_growth()}};
    const auto done = complete_stoichiometry(heterotroph_growth(0.67, ix::S_O), w);
    EXPECT_NEAR(done.coefficient(ix::S_O), oracle::kNuSOAerobicGrowth, 1e-14);
    EXPECT_DOUBLE_EQ(done.coefficient(ix::S_S), -1.0 / 0.67);
    EXPECT_LE(std::abs(conservation_residual(done, w.at(Conserved::COD))), 1e-12);
}

TEST(CompleteStoichiometry, AnoxicGrowthNitrate) {
    const ConservationWeights w{{Conserved::COD, cod_weights_growth()}};
    const auto done = complete_stoichiometry(heterotroph_growth(0.67, ix::S_NO), w);
    EXPECT_NEAR(done.coefficient(ix::S_NO), oracle::kNuSNOAnoxicGrowth, 1e-14);
}

TEST(CompleteStoichiometry, NothingToSolve) {
    KineticProcess p;
    p.id = "decay";
    p.stoichiometry = {1.0, -2.0, 0.5};
    const auto done = complete_stoichiometry(p, {});
    ASSERT_TRUE(done.resolved());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(done.coefficient(i), *p.stoichiometry[i]);
}

TEST(CompleteStoichiometry, CountMismatch) {
    auto p = heterotroph_growth(0.67, ix::S_O);
    p.conserved_for.clear();
    EXPECT_THROW(complete_stoichiometry(p, {}), ConfigError);
    p = heterotroph_growth(0.67, ix::S_O);
    p.conserved_for.insert(Conserved::N);
    EXPECT_THROW(complete_stoichiometry(p, {{Conserved::COD, cod_weights_growth()}}), ConfigError);
}

TEST(CompleteStoichiometry, ZeroWeightIsSingular) {
    auto p = heterotroph_growth(0.67, ix::S_ALK);
    EXPECT_THROW(complete_stoichiometry(p, {{Conserved::COD, cod_weights_growth()}}), ConfigError);
}

TEST(CompleteStoichiometry, CoupledTwoByTwo) {
    KineticProcess p;
    p.id = "coupled";
    p.stoichiometry = {1.0, kUnknown, kUnknown};
    p.conserved_for = {Conserved::COD, Conserved::N};
    const ConservationWeights w{{Conserved::COD, {1.0, 1.0, 2.0}}, {Conserved::N, {0.0, 1.0, -1.0}}};
    const auto done = complete_stoichiometry(p, w);
    EXPECT_NEAR(conservation_residual(done, w.at(Conserved::COD)), 0.0, 1e-12);
    EXPECT_NEAR(conservation_residual(done, w.at(Conserved::N)), 0.0, 1e-12);
    const ConservationWeights singular{{Conserved::COD, {1.0, 1.0, 1.0}}, {Conserved::N, {0.0, 2.0, 2.0}}};
    EXPECT_THROW(complete_stoichiometry(p, singular), ConfigError);
}

TEST(Asm1Matrix, CompletedCoefficients) {
    const ASM1ParameterSet p;
    const auto m = asm1_matrix(p);
    ASSERT_EQ(m.process_count(), 8u);
    EXPECT_NEAR(p.f_P(), oracle::kFP, 1e-15);
    EXPECT_NEAR(m.nu(0, ix::S_O), oracle::kNuSOAerobicGrowth, 1e-12);
    EXPECT_NEAR(m.nu(1, ix::S_NO), oracle::kNuSNOAnoxicGrowth, 1e-12);
    EXPECT_NEAR(m.nu(2, ix::S_O), oracle::kNuSOAutotrophGrowth, 1e-12);
    EXPECT_NEAR(m.nu(3, ix::X_ND), oracle::kNuXNDDecay, 1e-15);
    EXPECT_NEAR(m.nu(4, ix::X_ND), oracle::kNuXNDDecay, 1e-15);
}

TEST(Asm1Matrix, CodConservedByEveryProcess) {
    const ASM1ParameterSet p;
    const auto m = asm1_matrix(p);
    const auto w = asm1_conservation_weights(p).at(Conserved::COD);
    for (std::size_t j = 0; j < m.process_count(); ++j) EXPECT_LE(std::abs(m.residual(j, w)), 1e-10) << j;
}

TEST(Asm1Matrix, NitrogenConservedExceptDenitrification) {
    const ASM1ParameterSet p;
    const auto m = asm1_matrix(p);
    const auto w = asm1_conservation_weights(p).at(Conserved::N);
    for (std::size_t j = 0; j < m.process_count(); ++j) {
        if (j == 1) continue;
        EXPECT_LE(std::abs(m.residual(j, w)), 1e-10) << j;
    }
    // Nitrate reduced to untracked N2.
    EXPECT_EQ(-m.residual(1, w), (1.0 - p.Y_H) / (2.86 * p.Y_H));
}

TEST(Asm1Matrix, ChargeConserved) {
    const ASM1ParameterSet p;
    const auto m = asm1_matrix(p);
    const auto w = asm1_conservation_weights(p).at(Conserved::charge);
    for (std::size_t j = 0; j < m.process_count(); ++j) EXPECT_LE(std::abs(m.residual(j, w)), 1e-12) << j;
}

TEST(Asm1Matrix, ConservationHoldsOffBaseline) {
    ASM1ParameterSet p;
    p.Y_H = 0.55;
    p.Y_A = 0.3;
    p.i_XB = 0.09;
    p.f_Pobs = 0.15;
    const auto m = asm1_matrix(p);
    const auto w = asm1_conservation_weights(p).at(Conserved::COD);
    for (std::size_t j = 0; j < m.process_count(); ++j) EXPECT_LE(std::abs(m.residual(j, w)), 1e-10);
}

TEST(Asm1Rates, ZeroBiomassGivesZero) {
    const auto m = asm1_matrix({});
    std::vector<double> c{30, 69.5, 51.2, 202.32, 0.0, 0.0, 0.0, 2.0, 5.0, 31.56, 6.95, 10.59, 7.0};
    for (double r : m.rates(c)) EXPECT_EQ(r, 0.0);
    for (double r : m.production_rates(c)) EXPECT_EQ(r, 0.0);
}

TEST(Asm1Rates, Ammonification) {
    const auto m = asm1_matrix({});
    std::vector<double> c(ix::kCount, 0.0);
    c[ix::S_ND] = 1.0;
    c[ix::X_BH] = 500.0;
    EXPECT_NEAR(m.rates(c)[5], oracle::kAmmonificationRate, 1e-12);
}

TEST(Asm1Rates, HydrolysisGuards) {
    const auto m = asm1_matrix({});
    std::vector<double> c(ix::kCount, 1.0);
    c[ix::X_S] = 0.0;
    const auto rho = m.rates(c);
    EXPECT_EQ(rho[6], 0.0);
    EXPECT_EQ(rho[7], 0.0);
    c[ix::X_S] = 5.0;
    c[ix::X_BH] = 0.0;
    EXPECT_EQ(m.rates(c)[6], 0.0);
}

TEST(Asm1Rates, FiniteNonNegativeOnRandomStates) {
    const auto m = asm1_matrix({});
    std::mt19937_64 gen(7);
    for (int k = 0; k < 500; ++k) {
        const auto c = sample_state(gen);
        for (double r : m.rates(c)) {
            EXPECT_TRUE(std::isfinite(r));
            EXPECT_GE(r, 0.0);
        }
    }
}

TEST(Asm1Rates, ProductionIsLinearInRates) {
    const auto m = asm1_matrix({});
    std::mt19937_64 gen(11);
    const auto c = sample_state(gen);
    auto rho = m.rates(c);
    std::vector<double> r1(ix::kCount), r2(ix::kCount);
    m.apply(rho, r1);
    for (auto& v : rho) v *= 2.0;
    m.apply(rho, r2);
    for (std::size_t i = 0; i < ix::kCount; ++i) EXPECT_NEAR(r2[i], 2.0 * r1[i], 1e-12 * std::abs(r1[i]) + 1e-300);
    EXPECT_EQ(m.production_rates(c), r1);
}

TEST(Asm1Rates, DimensionMismatch) {
    const auto m = asm1_matrix({});
    std::vector<double> c(5, 1.0);
    EXPECT_THROW(m.production_rates(c), ConfigError);
}

TEST(Asm1Parameters, ValidationAndNames) {
    ASM1ParameterSet p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(ASM1ParameterSet::names().size(), 20u);
    p.at("mu_H") = -1.0;
    EXPECT_THROW(p.validate(), ConfigError);
    p = {};
    p.Y_H = 1.5;
    EXPECT_THROW(p.validate(), ConfigError);
    EXPECT_THROW(p.at("not_a_parameter"), ConfigError);
}

TEST(Aeration, Rate) {
    const AerationProcess a{240.0, 8.0};
    EXPECT_DOUBLE_EQ(a.rate(2.0), oracle::kAerationRate);
    EXPECT_LT(a.rate(9.0), 0.0);  // above saturation, no clipping
    EXPECT_THROW((AerationProcess{-1.0, 8.0}.validate()), ConfigError);
}
