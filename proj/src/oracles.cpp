#include "geoflow/oracles.hpp"

#include <cmath>

namespace geoflow {
namespace oracles {

namespace {

using Fn = std::function<double(const Vec&)>;

double partial4(const Fn& f, Vec x, int i, double h) {
  const double xi = x[i];
  auto at = [&](double d) {
    x[i] = xi + d;
    return f(x);
  };
  const double v = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
  x[i] = xi;
  return v;
}

double metric_component(const AmbientMetric& g, const Vec& x, int i, int j) {
  if (i != j) return 0.0;
  const double F = g.factor.value(norm(x));
  return 1.0 / (F * F);
}

}  // namespace

Rank3 christoffel_fd(const AmbientMetric& g, const Vec& x, double h) {
  const int m = g.dim;
  Rank3 out;
  out.dim = m;
  out.a.assign(m * m * m, 0.0);
  const double F = g.factor.value(norm(x));
  std::vector<double> dg(m * m * m, 0.0);  // dg[(i*m + j)*m + l] = d_l g_ij
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      Fn comp = [&g, i](const Vec& p) { return metric_component(g, p, i, i); };
      dg[(i * m + i) * m + l] = partial4(comp, x, l, h);
    }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        // g^{kl} is diagonal F^2
        const int l = k;
        v += 0.5 * F * F *
             (dg[(j * m + l) * m + i] + dg[(i * m + l) * m + j] - dg[(i * m + j) * m + l]);
        out.at(k, i, j) = v;
      }
  return out;
}

SymTensor ricci_from_riemann_fd(const AmbientMetric& g, const Vec& x, double h) {
  const int m = g.dim;
  // dGam[l][i][k][dir] = d_dir Gamma^l_ik
  std::vector<double> dGam(m * m * m * m, 0.0);
  auto didx = [m](int l, int i, int k, int d) { return ((l * m + i) * m + k) * m + d; };
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        for (int d = 0; d < m; ++d) {
          Fn comp = [&g, l, i, k](const Vec& p) { return christoffel(g, p)(l, i, k); };
          dGam[didx(l, i, k, d)] = partial4(comp, x, d, h);
        }
  const Rank3 Gam = christoffel(g, x);
  const double F = g.factor.value(norm(x));

  // R^l_ijk = d_j Gamma^l_ik - d_i Gamma^l_jk + Gamma^m_ik Gamma^l_jm
  //           - Gamma^m_jk Gamma^l_im; lower with g_ml, contract g^{kl}.
  SymTensor ric(m, "Ric_fd");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) {
        // Ric_ab = g^{kl} R_{a k b l}; compute R_{a k b l} with l = k scaled
        const int l = k;
        // R_{a k b l} = g_{s l} R^s_{a k b}
        double Rs = 0.0;
        for (int s = 0; s < m; ++s) {
          if (s != l) continue;  // g_{sl} diagonal
          double v = dGam[didx(s, a, b, k)] - dGam[didx(s, k, b, a)];
          for (int mm = 0; mm < m; ++mm)
            v += Gam(mm, a, b) * Gam(s, k, mm) - Gam(mm, k, b) * Gam(s, a, mm);
          Rs += v / (F * F);
        }
        acc += F * F * Rs;  // g^{kl} diagonal
      }
      ric.at(a, b) = acc;
    }
  return ric;
}

SymTensor hessian_fd(const AmbientMetric& g, const ScalarField& f, const Vec& x, double h) {
  const int m = g.dim;
  const Rank3 Gam = christoffel(g, x);
  SymTensor out(m, "Hess_fd");
  Fn fv = [&f](const Vec& p) { return f.value(p); };
  const double c1[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  const int o1[4] = {-2, -1, 1, 2};
  auto second_same = [&](int i) {
    Vec p = x;
    const double xi = p[i];
    auto at = [&](int o) {
      p[i] = xi + o * h;
      return fv(p);
    };
    return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
  };
  auto second_mixed = [&](int i, int j) {
    Vec p = x;
    const double xi = p[i], xj = p[j];
    double acc = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        p[i] = xi + o1[a] * h;
        p[j] = xj + o1[b] * h;
        acc += c1[a] * c1[b] * fv(p);
      }
    return acc / (h * h);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double v = (i == j) ? second_same(i) : second_mixed(i, j);
      for (int k = 0; k < m; ++k) v -= Gam(k, i, j) * partial4(fv, x, k, h);
      out.at(i, j) = v;
    }
  return out;
}

double contracted_bianchi_residual(const AmbientMetric& g, const Vec& x, double h) {
  const int m = g.dim;
  const Rank3 Gam = christoffel(g, x);
  const double F = g.factor.value(norm(x));
  double worst = 0.0;
  for (int k = 0; k < m; ++k) {
    // g^{jl} nabla_j Ric_kl with nabla_j Ric_kl = d_j Ric_kl - Gamma^p_jk Ric_pl
    // - Gamma^p_jl Ric_kp
    double div = 0.0;
    for (int j = 0; j < m; ++j) {
      const int l = j;  // diagonal inverse metric
      Fn comp = [&g, k, l](const Vec& p) { return ricci(g, p)(k, l); };
      double v = partial4(comp, x, j, h);
      const SymTensor ric = ricci(g, x);
      for (int p = 0; p < m; ++p) v -= Gam(p, j, k) * ric(p, l) + Gam(p, j, l) * ric(k, p);
      div += F * F * v;
    }
    Fn scal = [&g](const Vec& p) { return scalar_curvature(g, p); };
    const double dk_R = partial4(scal, x, k, h);
    worst = std::max(worst, std::abs(div - 0.5 * dk_R));
  }
  return worst;
}

}  // namespace oracles
}  // namespace geoflow
