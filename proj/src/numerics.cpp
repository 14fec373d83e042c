#include "geoflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoflow {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

OdeResult ode45(const OdeRhs& f, double t0, double t1, Vec y0, const OdeOptions& opts,
                const OdeObserver& on_accept) {
  OdeResult res;
  const int n = static_cast<int>(y0.size());
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  if (span == 0.0) {
    res.y = y0;
    res.ok = true;
    if (on_accept) on_accept(t0, y0);
    return res;
  }

  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
  double t = t0;
  Vec y = std::move(y0);
  if (on_accept) on_accept(t, y);
  f(t, y, k1);

  double h = opts.fixed_step > 0 ? opts.fixed_step : (opts.h_init > 0 ? opts.h_init : span / 100.0);
  h = std::min(h, span);
  double err_prev = 1.0;

  for (long step = 0; step < opts.max_steps; ++step) {
    if (dir * (t - t1) >= 0.0) {
      res.y = y;
      res.ok = true;
      res.steps = step;
      return res;
    }
    h = std::min(h, std::abs(t1 - t));
    const double hs = dir * h;

    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
    f(t + c2 * hs, ytmp, k2);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * hs, ytmp, k3);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * hs, ytmp, k4);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * hs, ytmp, k5);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + hs, ytmp, k6);
    for (int i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + hs, ynew, k7);

    if (!finite(ynew)) {
      res.message = "non-finite state";
      res.blowup_t = t;
      res.y = y;
      return res;
    }

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (opts.fixed_step > 0 || err <= 1.0) {
      t += hs;
      y = ynew;
      k1 = k7;
      if (on_accept) on_accept(t, y);
      if (opts.fixed_step <= 0) {
        const double fac =
            0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        h *= std::clamp(fac, 0.2, 5.0);
        err_prev = std::max(err, 1e-10);
      }
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (opts.fixed_step <= 0 && h < opts.h_min) {
      res.message = "step-size underflow";
      res.blowup_t = t;
      res.y = y;
      return res;
    }
  }
  res.message = "max step count exceeded";
  res.blowup_t = t;
  res.y = y;
  return res;
}

double brent_root(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("brent_root: no sign change in bracket");
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, s = b;
  bool mflag = true;
  for (int it = 0; it < max_iter; ++it) {
    if (fb == 0.0 || std::abs(b - a) < tol) return b;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double lo = (3 * a + b) / 4;
    const bool cond = !((s > std::min(lo, b) && s < std::max(lo, b))) ||
                      (mflag && std::abs(s - b) >= std::abs(b - c) / 2) ||
                      (!mflag && std::abs(s - b) >= std::abs(c - d) / 2) ||
                      (mflag && std::abs(b - c) < tol) || (!mflag && std::abs(c - d) < tol);
    if (cond) {
      s = (a + b) / 2;
      mflag = true;
    } else {
      mflag = false;
    }
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if (fa * fs < 0) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
  }
  return b;
}

void solve_tridiag(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c,
                   std::vector<double>& d) {
  const size_t n = b.size();
  for (size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  d[n - 1] /= b[n - 1];
  for (size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

void CubicSpline::build(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("CubicSpline: need >= 3 samples");
  const size_t n = x.size();
  x_ = std::move(x);
  y_ = std::move(y);
  m_.assign(n, 0.0);
  auto h = [&](size_t i) { return x_[i + 1] - x_[i]; };

  // Interior second-derivative equations for m_1 .. m_{n-2}.
  const size_t k = n - 2;
  std::vector<double> sub(k, 0.0), diag(k, 0.0), sup(k, 0.0), rhs(k, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    sub[i - 1] = h(i - 1);
    diag[i - 1] = 2.0 * (h(i - 1) + h(i));
    sup[i - 1] = h(i);
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1));
  }

  if (n >= 4) {
    // Not-a-knot: h1*m0 - (h0+h1)*m1 + h0*m2 = 0 and mirrored at the right end.
    // Eliminate m0 and m_{n-1} from the first and last interior rows.
    const double h0 = h(0), h1 = h(1);
    diag[0] += h0 * (h0 + h1) / h1;
    sup[0] -= h0 * h0 / h1;
    const double hl = h(n - 2), hp = h(n - 3);
    diag[k - 1] += hl * (hl + hp) / hp;
    sub[k - 1] -= hl * hl / hp;
    solve_tridiag(sub, diag, sup, rhs);
    for (size_t i = 0; i < k; ++i) m_[i + 1] = rhs[i];
    m_[0] = ((h0 + h1) * m_[1] - h0 * m_[2]) / h1;
    m_[n - 1] = ((hl + hp) * m_[n - 2] - hl * m_[n - 3]) / hp;
  } else {
    // natural spline for the 3-sample case
    solve_tridiag(sub, diag, sup, rhs);
    m_[1] = rhs[0];
  }
}

int CubicSpline::locate(double t) const {
  const int n = static_cast<int>(x_.size());
  int lo = 0, hi = n - 1;
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return n - 2;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (x_[mid] <= t ? lo : hi) = mid;
  }
  return lo;
}

double CubicSpline::eval(double t) const {
  const int i = locate(t);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double t) const {
  const int i = locate(t);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3 * A * A - 1) / 6.0 * h * m_[i] +
         (3 * B * B - 1) / 6.0 * h * m_[i + 1];
}

double CubicSpline::deriv2(double t) const {
  const int i = locate(t);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
  return A * m_[i] + B * m_[i + 1];
}

namespace {
double cubic4(double ym1, double y0, double y1, double y2, double s) {
  // interpolating cubic through 4 points at parameters -1,0,1,2 evaluated at s in [0,1]
  const double a = y0;
  const double b = (y1 - ym1) / 2.0;
  const double c = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
  const double d = -0.5 * ym1 + 1.5 * y0 - 1.5 * y1 + 0.5 * y2;
  return a + s * (b + s * (c + s * d));
}
}  // namespace

double periodic_cubic(const std::vector<double>& y, double u) {
  const int n = static_cast<int>(y.size());
  double up = std::fmod(u, static_cast<double>(n));
  if (up < 0) up += n;
  const int j = static_cast<int>(std::floor(up));
  const double s = up - j;
  auto at = [&](int k) { return y[((k % n) + n) % n]; };
  return cubic4(at(j - 1), at(j), at(j + 1), at(j + 2), s);
}

double clamped_cubic(const std::vector<double>& y, double u) {
  const int n = static_cast<int>(y.size());
  double uc = std::clamp(u, 0.0, static_cast<double>(n - 1));
  int j = std::min(static_cast<int>(std::floor(uc)), n - 2);
  const double s = uc - j;
  auto at = [&](int k) { return y[std::clamp(k, 0, n - 1)]; };
  return cubic4(at(j - 1), at(j), at(j + 1), at(j + 2), s);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double fd_deriv4(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return (next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double a, double b) { return a + (b - a) * uniform(); }

}  // namespace geoflow
