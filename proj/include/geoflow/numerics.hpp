#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace geoflow {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

// Dormand-Prince 5(4) embedded Runge-Kutta with adaptive step control.
// Setting fixed_step > 0 disables adaptivity (used by order tests).
struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;
  double h_min = 1e-14;
  double fixed_step = 0.0;
  long max_steps = 4000000;
};

struct OdeResult {
  Vec y;
  bool ok = false;
  std::string message;
  long steps = 0;
  double blowup_t = 0.0;  // last reachable time when integration aborts
};

using OdeRhs = std::function<void(double, const Vec&, Vec&)>;
using OdeObserver = std::function<void(double, const Vec&)>;

OdeResult ode45(const OdeRhs& f, double t0, double t1, Vec y0,
                const OdeOptions& opts = {}, const OdeObserver& on_accept = nullptr);

// Brent root finding on a bracketing interval [a, b]; f(a) and f(b) must
// have opposite signs.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-13, int max_iter = 200);

// Thomas algorithm; diagonals (a sub, b main, c super) are destroyed, d holds
// the solution on return.
void solve_tridiag(std::vector<double>& a, std::vector<double>& b,
                   std::vector<double>& c, std::vector<double>& d);

// Cubic spline with not-a-knot end conditions (natural for n < 4).
class CubicSpline {
 public:
  void build(std::vector<double> x, std::vector<double> y);
  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
  double xmin() const { return x_.front(); }
  double xmax() const { return x_.back(); }

 private:
  int locate(double t) const;
  std::vector<double> x_, y_, m_;  // m_: second derivatives at nodes
};

// Periodic cubic interpolation of samples y[0..n) on a uniform parameter grid
// u = 0..n (Catmull-Rom style through exact cubic of 4 neighbours).
double periodic_cubic(const std::vector<double>& y, double u);
double clamped_cubic(const std::vector<double>& y, double u);

// Composite Simpson quadrature with n subintervals (n made even internally).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// 4th order central finite-difference first derivative of a callable.
double fd_deriv4(const std::function<double(double)>& f, double x, double h = 1e-4);

// Deterministic 64-bit generator used for seeded perturbations.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next();
  double uniform();                    // [0, 1)
  double uniform(double a, double b);  // [a, b)
};

}  // namespace geoflow
