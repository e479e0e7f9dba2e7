#pragma once

// Unaided distance vision of 7477 women (Stuart, 1953) and the published
// decomposition of it, transcribed as printed (4 decimals for tables, 2 for
// percent arrays).  Row = right eye, column = left eye; grades run
// Highest, Second, Third, Lowest.

#include <array>

#include "aitchison/table.hpp"

namespace stuart {

inline aitchison::Matrix counts() {
  aitchison::Matrix n(4, 4);
  n << 1520, 266, 124, 66,  //
      234, 1512, 432, 78,   //
      117, 362, 1772, 205,  //
      36, 82, 179, 492;
  return n;
}

inline aitchison::ProbabilityTable proportions() { return aitchison::closure(counts()); }

struct PrintedTable {
  const char* name;
  std::array<double, 16> cells;  // row-major
  std::array<double, 4> row_margin;
  std::array<double, 4> col_margin;
};

inline const PrintedTable kProportions{
    "sample proportions",
    {0.2033, 0.0356, 0.0166, 0.0088, 0.0313, 0.2022, 0.0578, 0.0104, 0.0156, 0.0484, 0.2370, 0.0274, 0.0048,
     0.0110, 0.0239, 0.0658},
    {0.2285, 0.3149, 0.3356, 0.1210},
    {0.1893, 0.3181, 0.3474, 0.1452}};

inline const PrintedTable kSymmetric{
    "nearest symmetric",
    {0.2036, 0.0334, 0.0161, 0.0065, 0.0334, 0.2025, 0.0530, 0.0107, 0.0161, 0.0530, 0.2373, 0.0257, 0.0065,
     0.0107, 0.0257, 0.0659},
    {0.2596, 0.2996, 0.3320, 0.1088},
    {0.2596, 0.2996, 0.3320, 0.1088}};

inline const PrintedTable kSkew{
    "skew-symmetric",
    {0.0621, 0.0662, 0.0639, 0.0840, 0.0582, 0.0621, 0.0678, 0.0605, 0.0603, 0.0568, 0.0621, 0.0664, 0.0458,
     0.0636, 0.0580, 0.0621},
    {0.2762, 0.2486, 0.2456, 0.2296},
    {0.2264, 0.2487, 0.2518, 0.2731}};

inline const PrintedTable kQuasiSymmetric{
    "nearest quasi-symmetric",
    {0.2034, 0.0369, 0.0180, 0.0079, 0.0302, 0.2023, 0.0536, 0.0117, 0.0144, 0.0523, 0.2371, 0.0276, 0.0054,
     0.0098, 0.0238, 0.0658},
    {0.2285, 0.3149, 0.3356, 0.1210},
    {0.1893, 0.3181, 0.3474, 0.1452}};

inline const PrintedTable kSkewInteraction{
    "skew-symmetric interaction",
    {0.0623, 0.0602, 0.0574, 0.0701, 0.0582, 0.0623, 0.0678, 0.0605, 0.0677, 0.0578, 0.0623, 0.0620, 0.0554,
     0.0637, 0.0627, 0.0623},
    {0.2500, 0.2500, 0.2500, 0.2500},
    {0.2500, 0.2500, 0.2500, 0.2500}};

inline const PrintedTable kMarginalHomogeneous{
    "nearest geometric marginal homogeneous",
    {0.2034, 0.0322, 0.0148, 0.0073, 0.0346, 0.2023, 0.0571, 0.0096, 0.0175, 0.0490, 0.2371, 0.0255, 0.0058,
     0.0120, 0.0258, 0.0658},
    {0.2083, 0.3169, 0.3420, 0.1328},
    {0.2083, 0.3169, 0.3420, 0.1328}};

inline const PrintedTable kSkewIndependent{
    "skew-symmetric independent",
    {0.0622, 0.0687, 0.0696, 0.0749, 0.0563, 0.0622, 0.0630, 0.0678, 0.0556, 0.0615, 0.0622, 0.0670, 0.0517,
     0.0571, 0.0578, 0.0622},
    {0.2754, 0.2494, 0.2464, 0.2288},
    {0.2259, 0.2495, 0.2526, 0.2720}};

// Local odds ratios of the nearest quasi-symmetric table (3x3, row-major).
inline constexpr std::array<double, 9> kQsOddsRatios{36.9231, 0.5417, 0.4997, 0.5417, 17.1326,
                                                     0.5345,  0.4997, 0.5345, 23.7687};

// Contribution arrays in percent (row-major).
inline constexpr std::array<double, 16> kSkewnessArray{0.00,  1.87,  0.38, 41.80, -1.87,  0.00, 3.56,  -0.28,
                                                       -0.38, -3.56, 0.00, 2.10,  -41.80, 0.28, -2.10, 0.00};
inline constexpr std::array<double, 16> kQuasiSkewnessArray{0.00, -1.54, -8.47,  17.24,  1.54,   0.00,
                                                            7.24, -15.46, 8.47,  -7.24,  0.00,   -0.049,
                                                            -17.24, 15.46, 0.049, 0.00};
inline constexpr std::array<double, 16> kHeterogeneityArray{0.00,  7.06,  8.90, 24.67, -7.06,  0.00,  0.11,  5.34,
                                                            -8.90, -0.11, 0.00, 3.93,  -24.67, -5.34, -3.93, 0.00};

inline constexpr double kNorm = 20.560;
inline constexpr double kNormSym = 20.341;
inline constexpr double kE2 = 0.219;
inline constexpr double kQ2 = 0.080;
inline constexpr double kM2 = 0.139;

}  // namespace stuart
