#include "newspulse/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "newspulse/errors.hpp"

namespace newspulse {

namespace {

struct LinSolve {
  double a = 0.0, c = 0.0;
  double ssr = std::numeric_limits<double>::infinity();
  bool ok = false;
};

// least squares of y ~ a*exp(-rate*t) + c at fixed rate (2x2 normal equations)
LinSolve solve_at_rate(const std::vector<double>& t, const std::vector<double>& y,
                       double rate) {
  const std::size_t n = t.size();
  double sx = 0, sxx = 0, sxy = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::exp(-rate * t[i]);
    sx += x;
    sxx += x * x;
    sxy += x * y[i];
    sy += y[i];
  }
  double det = sxx * double(n) - sx * sx;
  LinSolve f;
  if (std::abs(det) < 1e-14 * std::max(1.0, sxx * double(n))) return f;
  f.a = (sxy * double(n) - sx * sy) / det;
  f.c = (sxx * sy - sx * sxy) / det;
  f.ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.a * std::exp(-rate * t[i]) + f.c);
    f.ssr += r * r;
  }
  f.ok = true;
  return f;
}

}  // namespace

ExpFit fit_exponential(const ResponseCurve& curve, const ExpFitOptions& opts) {
  if (opts.lag_hi < opts.lag_lo) throw InputError("fit lag range inverted");
  if (!(opts.rate_lo > 0) || !(opts.rate_hi > opts.rate_lo))
    throw InputError("fit rate bounds must satisfy 0 < lo < hi");
  if (opts.grid_points < 2 || opts.max_iters < 1)
    throw InputError("fit solver settings out of range");

  std::vector<double> t, y;
  for (int lag = opts.lag_lo; lag <= opts.lag_hi; ++lag) {
    if (lag < curve.lag_lo || lag >= curve.lag_lo + int(curve.size())) continue;
    std::size_t i = std::size_t(lag - curve.lag_lo);
    if (!curve.events[i] || std::isnan(curve.mean[i])) continue;
    t.push_back(double(lag));
    y.push_back(curve.mean[i]);
  }
  if (t.size() < 5)
    throw InputError("exponential fit needs >= 5 lags with data, got " +
                     std::to_string(t.size()));

  // log-grid scan over the rate
  const double ulo = std::log(opts.rate_lo), uhi = std::log(opts.rate_hi);
  int best_k = -1;
  LinSolve best;
  for (int k = 0; k < opts.grid_points; ++k) {
    double u = ulo + (uhi - ulo) * double(k) / double(opts.grid_points - 1);
    auto f = solve_at_rate(t, y, std::exp(u));
    if (f.ok && f.ssr < best.ssr) {
      best = f;
      best_k = k;
    }
  }
  if (best_k < 0) throw FitError("no usable rate candidate on the grid");

  auto fit_at = [&](double u) { return solve_at_rate(t, y, std::exp(u)); };
  auto make_result = [&](double u, const LinSolve& f) {
    ExpFit out;
    out.amplitude = f.a;
    out.rate = std::exp(u);
    out.offset = f.c;
    out.residual = f.ssr;
    out.lags_used = int(t.size());
    return out;
  };

  // golden-section refinement between the neighbors of the best grid point
  double step = (uhi - ulo) / double(opts.grid_points - 1);
  double a = ulo + step * double(std::max(0, best_k - 1));
  double b = ulo + step * double(std::min(opts.grid_points - 1, best_k + 1));
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  auto f1 = fit_at(x1), f2 = fit_at(x2);
  double ubest = ulo + step * double(best_k);
  int iters = 0;
  while (b - a > 1e-12) {
    if (++iters > opts.max_iters) {
      double u = f1.ssr < f2.ssr ? x1 : x2;
      const auto& f = f1.ssr < f2.ssr ? f1 : f2;
      throw FitError("rate refinement did not converge in " +
                         std::to_string(opts.max_iters) + " iterations",
                     make_result(u, f.ok ? f : best));
    }
    if (f1.ssr < f2.ssr) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fit_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fit_at(x2);
    }
  }
  ubest = (a + b) / 2;
  auto refined = fit_at(ubest);
  if (!refined.ok || refined.ssr > best.ssr)
    return make_result(ulo + step * double(best_k), best);
  return make_result(ubest, refined);
}

PowerFit fit_power_law(const SimilarityCurve& curve, double lo_min, double hi_min) {
  if (!(lo_min > 0) || !(hi_min > lo_min))
    throw InputError("power-law lag range must satisfy 0 < lo < hi");

  std::vector<double> x, y, w;
  for (const auto& b : curve.bins) {
    if (b.pairs == 0) continue;
    double mid = std::sqrt(b.lo_min * b.hi_min);
    if (mid < lo_min || mid > hi_min) continue;
    if (!(b.mean_sim > 0)) continue;  // log undefined; excluded per contract
    x.push_back(std::log(mid));
    y.push_back(std::log(b.mean_sim));
    w.push_back(double(b.pairs));
  }
  if (x.size() < 5)
    throw InputError("power-law fit needs >= 5 usable bins, got " +
                     std::to_string(x.size()));

  double W = 0, xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    W += w[i];
    xbar += w[i] * x[i];
    ybar += w[i] * y[i];
  }
  xbar /= W;
  ybar /= W;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
  }
  if (sxx == 0) throw InputError("power-law fit bins share one lag midpoint");

  PowerFit out;
  out.exponent = sxy / sxx;
  out.intercept_ln = ybar - out.exponent * xbar;
  out.bins_used = int(x.size());
  double ssr = 0, sst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (out.exponent * x[i] + out.intercept_ln);
    ssr += w[i] * r * r;
    sst += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  out.r2 = sst > 0 ? 1.0 - ssr / sst : 1.0;
  return out;
}

}  // namespace newspulse
