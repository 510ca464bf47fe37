// Build a strip projection along the golden-slope line, audit its exact
// self-similarity under multiplication by the slope, and compare the
// closed-form window transform with windowed exponential sums.

#include <cstdio>

#include "toral/cutproject.hpp"
#include "toral/spectrum.hpp"

using namespace toral;

int main() {
  const auto cfg = CutProjectConfig::golden(/*ell=*/1.0, /*radius=*/200.0);
  const auto pts = cut_project(cfg);
  std::printf("golden-slope strip projection: %lld points on [-%g, %g], density %.6f\n",
              static_cast<long long>(pts.total_count()), cfg.radius(), cfg.radius(),
              static_cast<double>(pts.total_count()) / (2.0 * cfg.radius()));

  std::printf("first points: ");
  for (std::size_t i = 0; i < 6 && i < pts.points.size(); ++i)
    std::printf("%.6f ", pts.points[pts.points.size() / 2 + i].position);
  std::printf("...\n");

  const auto dc = dilation_check(pts, cfg.dilation()->alpha);
  std::printf("self-similarity under x -> %.9f x: %zu points checked, %zu violations, "
              "max deviation %.3g\n",
              cfg.dilation()->alpha, dc.checked, dc.violations.size(), dc.max_deviation);

  std::printf("\nwindow transform, closed form vs windowed mean:\n");
  const auto map = cfg.map();
  for (const IntVec& k : {IntVec{0, 0}, IntVec{1, 0}, IntVec{0, 1}, IntVec{1, 1}, IntVec{2, -1}}) {
    const double closed = kappa_coeff_closed_form(cfg, k);
    const Complex bohr = kappa_hat_points(pts, map, k).value;
    std::printf("  k = (%2lld, %2lld):  %+.9f   vs   %+.9f%+.9fi\n",
                static_cast<long long>(k[0]), static_cast<long long>(k[1]), closed, bohr.real(),
                bohr.imag());
  }
  return 0;
}
