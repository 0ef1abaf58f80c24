#pragma once

#include <stdexcept>
#include <string>

#include "newspulse/event_study.hpp"
#include "newspulse/simcurve.hpp"

namespace newspulse {

struct ExpFit {
  double amplitude = 0.0;  // A in A*exp(-rate*lag) + offset
  double rate = 0.0;
  double offset = 0.0;
  double residual = 0.0;  // sum of squared residuals at the solution
  int lags_used = 0;
};

// Solver gave up before converging; carries the best parameters seen.
struct FitError : std::runtime_error {
  ExpFit best;
  explicit FitError(const std::string& msg, ExpFit b = {})
      : std::runtime_error(msg), best(b) {}
};

struct ExpFitOptions {
  int lag_lo = 0;
  int lag_hi = 60;  // inclusive
  double rate_lo = 1e-4;
  double rate_hi = 1.0;
  int grid_points = 50;  // log-spaced rate seeds
  int max_iters = 200;   // golden-section refinement cap
};

// Least squares for A*exp(-rate*lag) + offset over curve lags with data.
// The rate is scanned on a log grid, (A, offset) solved linearly at each
// candidate, then the best rate is refined by golden section; deterministic
// and derivative-free. Fewer than 5 usable lags throws InputError;
// failure to converge throws FitError with best-so-far.
ExpFit fit_exponential(const ResponseCurve& curve, const ExpFitOptions& opts = {});

struct PowerFit {
  double exponent = 0.0;      // slope of ln(mean) on ln(lag midpoint)
  double intercept_ln = 0.0;  // intercept in log space
  double r2 = 0.0;            // weighted coefficient of determination
  int bins_used = 0;
};

// Pair-count-weighted OLS of ln(mean) on ln(geometric bin midpoint) over bins
// whose midpoint lies in [lo_min, hi_min]. Bins with mean <= 0 or no pairs
// are excluded; fewer than 5 left throws InputError.
PowerFit fit_power_law(const SimilarityCurve& curve, double lo_min = 100.0,
                       double hi_min = 100000.0);

}  // namespace newspulse
