// Post-processing of sampled curves: extrema, envelopes and power-law fits.

#ifndef HOAIRY_TOOLS_ANALYSIS_HPP_
#define HOAIRY_TOOLS_ANALYSIS_HPP_

#include <vector>

namespace hoairy::cli {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Strict interior local maxima (or minima) of ys, each refined by the vertex of the parabola
/// through the three neighbouring samples. NaN samples are skipped.
std::vector<Extremum> local_extrema(const std::vector<double>& xs, const std::vector<double>& ys, bool maxima);

/// Largest |y| in each window [x0 + k w, x0 + (k+1) w) with at least one finite sample.
std::vector<Extremum> window_envelope(const std::vector<double>& xs, const std::vector<double>& ys, double width);

struct PowerFit {
  double slope = 0.0;      // d ln|y| / d ln|x|
  double intercept = 0.0;  // ln|y| at |x| = 1
  int points = 0;
};

/// Least squares of ln|y| on ln|x|.
PowerFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys);
PowerFit loglog_fit(const std::vector<Extremum>& points);

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_ANALYSIS_HPP_
