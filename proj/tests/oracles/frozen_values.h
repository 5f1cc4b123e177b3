//
// Copyright 2026 The dpcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Generated by derive_frozen_values.py. Do not edit by hand.

#ifndef DPCC_TESTS_ORACLES_FROZEN_VALUES_H_
#define DPCC_TESTS_ORACLES_FROZEN_VALUES_H_

namespace dpcc::frozen {

inline constexpr double kTriangleErrOneCluster = 1.0;
inline constexpr double kTriangleAgrOneCluster = 2.0;
inline constexpr double kTrianglePositiveCutAll = 2.0;
inline constexpr double kTriangleOptimumErr = 1.0;
inline constexpr double kTrianglePartitionCount = 5.0;
inline constexpr double kSingletonMergeX = 0.7;
inline constexpr double kSingletonMergeLambda = 5.551115123125783e-17;
inline constexpr double kRounding60Pairs = 1770.0;
inline constexpr double kRounding60Mean = 885.0;
inline constexpr double kRounding60Band = 84.14273587185052;
inline constexpr double kPlantedMean100 = 247.5;
inline constexpr double kPlantedSigma100 = 15.333786225195654;
inline constexpr double kEdgeMergedProbEps1 = 0.6224593312018546;
inline constexpr double kEdgeSplitProbEps1 = 0.37754066879814546;
inline constexpr double kEdgeMergedProbEps01 = 0.5124973964842103;
inline constexpr double kEdgeSplitProbEps01 = 0.48750260351578967;
inline constexpr double kEdgeMergedProbEps5 = 0.9241418199787566;
inline constexpr double kEdgeSplitProbEps5 = 0.07585818002124356;
inline constexpr unsigned long long kBell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
inline constexpr double kUtilityBound7Eps1 = 13.553013984744366;
inline constexpr double kFfdKept = 1.0;
inline constexpr double kFfdBins = 1.0;
inline constexpr double kFfdBinLoad = 7.0;
inline constexpr double kFfdMergeBound = 21.0;
inline constexpr double kPathMinMaxDisjoint4 = 2.0;
inline constexpr double kSingleEdgeCutDistance = 2.5;
inline constexpr double kPatternCutDistance5 = 8.0;
inline constexpr double kCodebookTarget = 256.0;
inline constexpr double kCodebookMinDistance = 2.0;
inline constexpr double kSplitCoupling = 3.0;

}  // namespace dpcc::frozen

#endif  // DPCC_TESTS_ORACLES_FROZEN_VALUES_H_
