#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace tfwd::opt1d {

struct Extremum {
  double location;
  double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tol`.
template <class Fn>
Extremum golden_maximize(Fn&& fn, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int it = 0; it < 500 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    }
  }
  return f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
}

/// Maximum of fn on a grid g(0..n-1) followed by golden-section refinement
/// between the neighbours of the best grid point. The returned value is never
/// below the best grid value.
template <class Fn, class GridFn>
Extremum scan_then_refine(Fn&& fn, GridFn&& grid, std::size_t n, double tol) {
  std::size_t best = 0;
  double best_val = fn(grid(0));
  for (std::size_t i = 1; i < n; ++i) {
    double v = fn(grid(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = grid(best == 0 ? 0 : best - 1);
  const double hi = grid(best + 1 >= n ? n - 1 : best + 1);
  Extremum refined = golden_maximize(fn, lo, hi, tol);
  if (refined.value < best_val) return {grid(best), best_val};
  return refined;
}

} // namespace tfwd::opt1d
