#pragma once

// Generated by tests/oracles/derived_values.py; do not edit by hand.

namespace oracle {
inline constexpr double kInfluentCOD = 381.19;
inline constexpr double kInfluentTKN = 54.425599999999996;
inline constexpr double kInfluentTSS = 211.26749999999998;
inline constexpr double kInfluentCODMassFlow = 7031.43074;
inline constexpr double kInfluentNHMassFlow = 582.15576;
inline constexpr double kMixedNH = 7.890000000000001;
inline constexpr double kFP = 0.08064703828697777;
inline constexpr double kNuSOAerobicGrowth = -0.4925373134328357;
inline constexpr double kNuSNOAnoxicGrowth = -0.17221584385763486;
inline constexpr double kNuSOAutotrophGrowth = -18.041666666666668;
inline constexpr double kNuXNDDecay = 0.07516117770278133;
inline constexpr double kAmmonificationRate = 25.0;
inline constexpr double kAerationRate = 1440.0;
inline constexpr double kFirstOrderAtOneHRT = 6.321205588285577;
inline constexpr double kSettlingAt200 = 154.89958356240757;
inline constexpr double kPureConvectionTopLayer = 2999.9999999999995;
inline constexpr double kPureConvectionBottomLayer = 3000.0;
inline constexpr double kSplit06Recycle = 44270.4;
inline constexpr double kSplit04Forward = 29513.600000000002;
inline constexpr double kRecycleHalfSplit = 100.0;
inline constexpr double kTriangularMean = 0.3333333333333333;
inline constexpr double kKsDisjointHalf = 0.5;
inline constexpr double kSpearmanExample = 0.7999999999999999;
inline constexpr double kKolmogorovSf05 = 0.9639452436648751;
inline constexpr double kKolmogorovSf1 = 0.26999967167735456;
inline constexpr double kKolmogorovSf15 = 0.022217962616525127;
inline constexpr double kCrf005x10 = 0.12950457496545661;
inline constexpr double kAnnualized100 = 12.950457496545662;
inline constexpr double kBaselineAerationEnergy = 3341.3866666666668;
inline constexpr double kUnderflowBaseline = 18831.0;
}  // namespace oracle
