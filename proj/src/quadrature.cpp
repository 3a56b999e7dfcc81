#include "thirring/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "thirring/errors.hpp"

namespace thirring::quad {

namespace {

// QUADPACK dqk15 nodes and weights (positive half).
constexpr double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Panel {
  double a, b;
  Complex value;
  double err;
};

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);

  Complex kronrod = kWgk[7] * fv[7];
  Complex gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  kronrod *= h;
  gauss *= h;

  double err = std::abs(kronrod - gauss);
  // QUADPACK-style error sharpening.
  if (err > 0.0) err = std::pow(200.0 * err, 1.5);
  double resabs = 0.0;
  for (int i = 0; i < 7; ++i)
    resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  resabs = (resabs + kWgk[7] * std::abs(fv[7])) * std::abs(h);
  err = std::min(err, std::abs(kronrod - gauss));
  if (resabs > 0.0) err = std::max(err, 1e-16 * resabs);
  return Panel{a, b, kronrod, err};
}

}  // namespace

Result integrate(const std::function<Complex(double)>& f, double a, double b,
                 const Options& opt) {
  Result out;
  if (a == b) return out;
  double sign = 1.0;
  double lo = a, hi = b;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }

  std::vector<double> cuts;
  cuts.push_back(lo);
  for (double x : opt.breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Oscillatory pre-split: keep initial panels under half a period.
  std::vector<double> grid;
  const double span = hi - lo;
  double max_width = span;
  if (opt.osc_freq * span > 10.0) max_width = M_PI / opt.osc_freq;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    grid.push_back(cuts[i]);
    const double w = cuts[i + 1] - cuts[i];
    if (w > max_width) {
      const auto n = static_cast<std::size_t>(std::ceil(w / max_width));
      for (std::size_t k = 1; k < n; ++k)
        grid.push_back(cuts[i] + w * static_cast<double>(k) / static_cast<double>(n));
    }
  }
  grid.push_back(hi);
  if (grid.size() > opt.max_intervals)
    throw QuadratureFailure("oscillatory pre-split exceeds interval budget");

  auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

  Complex total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Panel p = eval_panel(f, grid[i], grid[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }

  auto converged = [&] {
    return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (heap.size() >= opt.max_intervals)
      throw QuadratureFailure("adaptive quadrature did not converge within budget");
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at floating-point resolution; accept its estimate.
      heap.push(Panel{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.err;
      continue;
    }
    Panel left = eval_panel(f, worst.a, mid);
    Panel right = eval_panel(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  out.value = sign * total;
  out.est_error = total_err;
  return out;
}

Result integrate_real(const std::function<double(double)>& f, double a,
                      double b, const Options& opt) {
  return integrate([&f](double x) { return Complex(f(x), 0.0); }, a, b, opt);
}

}  // namespace thirring::quad
