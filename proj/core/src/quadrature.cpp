#include "hopfcole/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "hopfcole/common.hpp"

namespace hopfcole {
namespace {

struct Workspace {
  const std::function<double(double)>& f;
  QuadratureOptions opts;
  double whole_estimate = 0.0;  // running scale for the relative tolerance
};

double simpson(double fa, double fm, double fb, double h6) {
  return h6 * (fa + 4.0 * fm + fb);
}

double adapt(Workspace& ws, double a, double b, double fa, double fm, double fb,
             double s, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = ws.f(lm);
  double frm = ws.f(rm);
  double h12 = (b - a) / 12.0;
  double sl = simpson(fa, flm, fm, h12);
  double sr = simpson(fm, frm, fb, h12);
  double s2 = sl + sr;
  double err = s2 - s;
  double scale = std::max(std::fabs(ws.whole_estimate), std::fabs(s2));
  double tol = std::max(ws.opts.abs_tol, ws.opts.rel_tol * scale);
  if (std::fabs(err) <= 15.0 * tol || (b - a) < 1e-300) {
    return s2 + err / 15.0;
  }
  if (depth >= ws.opts.max_depth) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b
       << "]: estimate " << s2 << ", last refinement error " << err
       << ", tolerance " << tol << ", depth " << depth;
    throw NumericalError(os.str());
  }
  return adapt(ws, a, m, fa, flm, fm, sl, depth + 1) +
         adapt(ws, m, b, fm, frm, fb, sr, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  Workspace ws{f, opts, 0.0};
  // Seed the whole-interval scale with a coarse composite pass so that the
  // relative tolerance is meaningful on peaked integrands.
  const int n0 = 32;
  double h = (b - a) / n0;
  double coarse = 0.0;
  for (int i = 0; i < n0; ++i) {
    double x0 = a + i * h;
    coarse += simpson(f(x0), f(x0 + 0.5 * h), f(x0 + h), h / 6.0);
  }
  ws.whole_estimate = coarse;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double s = simpson(fa, fm, fb, (b - a) / 6.0);
  return adapt(ws, a, b, fa, fm, fb, s, 0);
}

}  // namespace hopfcole
