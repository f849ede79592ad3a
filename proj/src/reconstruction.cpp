/*
Copyright 2026 The hsg Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "hsg/reconstruction.hpp"


namespace hsg {

namespace {

constexpr double kCentral1D = 0.5;
constexpr double kSide1D = 0.25;
constexpr double kCentral2D = 0.5;
constexpr double kSector2D = 0.125;

inline double nonlinear_weight(double linear, double indicator, const CwenoParameters& p) {
  const double base = p.epsilon + indicator;
  if (p.power == 2.0) return linear / (base * base);
  return linear / std::pow(base, p.power);
}

// Integral of x^k over [-1/2, 1/2].
constexpr double centered_moment(int k) {
  if (k % 2 != 0) return 0.0;
  double half_power = 1.0;
  for (int i = 0; i <= k; ++i) half_power *= 0.5;
  return 2.0 * half_power / (k + 1);
}

// Integral of (d^a x^p)(d^a x^r) over [-1/2, 1/2].
constexpr double derivative_product(int a, int p, int r) {
  if (a > p || a > r) return 0.0;
  double cp = 1.0;
  double cr = 1.0;
  for (int i = 0; i < a; ++i) {
    cp *= p - i;
    cr *= r - i;
  }
  return cp * cr * centered_moment(p - a + r - a);
}

struct GramEntry {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

constexpr double gram_value(int i, int j) {
  const int p = i / 3, q = i % 3, r = j / 3, s = j % 3;
  double value = 0.0;
  for (int ax = 0; ax <= 2; ++ax) {
    for (int ay = 0; ay <= 2; ++ay) {
      if (ax + ay == 0) continue;
      value += derivative_product(ax, p, r) * derivative_product(ay, q, s);
    }
  }
  return i == j ? value : 2.0 * value;
}

constexpr int count_gram() {
  int n = 0;
  for (int i = 0; i < 9; ++i) {
    for (int j = i; j < 9; ++j) n += gram_value(i, j) != 0.0;
  }
  return n;
}

// Nonzero entries (upper triangle, off-diagonal doubled) of the quadratic form
// sum_{1 <= |alpha|} int (D^alpha P)^2 on the biquadratic coefficients.
constexpr auto kGram = [] {
  std::array<GramEntry, count_gram()> entries{};
  std::size_t n = 0;
  for (int i = 0; i < 9; ++i) {
    for (int j = i; j < 9; ++j) {
      const double v = gram_value(i, j);
      if (v != 0.0) entries[n++] = {i, j, v};
    }
  }
  return entries;
}();

inline double indicator(const std::array<double, 9>& c) {
  double sum = 0.0;
  for (const GramEntry& e : kGram) {
    sum += e.value * c[static_cast<std::size_t>(e.i)] * c[static_cast<std::size_t>(e.j)];
  }
  return sum;
}

// The same form restricted to bilinear polynomials c0 + c3 x + c1 y + c4 xy.
inline double bilinear_indicator(const std::array<double, 9>& c) {
  return c[3] * c[3] + c[1] * c[1] + 7.0 / 6.0 * c[4] * c[4];
}

// Average-to-quadratic operator for three consecutive cell averages.
constexpr double kQ[3][3] = {
    {-1.0 / 24.0, 13.0 / 12.0, -1.0 / 24.0},
    {-0.5, 0.0, 0.5},
    {0.5, -1.0, 0.5},
};

}  // namespace

Quadratic1D cweno3_polynomial_1d(double um, double u, double up,
                                 const CwenoParameters& params) {
  const double c = 0.5 * (up - 2.0 * u + um);
  const double b = 0.5 * (up - um);
  const double a = u - c / 12.0;

  const double slope_l = u - um;
  const double slope_r = up - u;

  // Central polynomial (P_opt - d_L P_L - d_R P_R) / d_C.
  const double pc0 = 2.0 * a - u;
  const double pc1 = b;
  const double pc2 = 2.0 * c;

  const double is_c = pc1 * pc1 + 52.0 / 3.0 * c * c;
  const double is_l = slope_l * slope_l;
  const double is_r = slope_r * slope_r;

  const double wc = nonlinear_weight(kCentral1D, is_c, params);
  const double wl = nonlinear_weight(kSide1D, is_l, params);
  const double wr = nonlinear_weight(kSide1D, is_r, params);
  const double total = wc + wl + wr;

  Quadratic1D q;
  q.c0 = (wc * pc0 + (wl + wr) * u) / total;
  q.c1 = (wc * pc1 + wl * slope_l + wr * slope_r) / total;
  q.c2 = wc * pc2 / total;
  return q;
}

InterfaceValues cweno3_reconstruct_1d(double um, double u, double up,
                                      const CwenoParameters& params) {
  const Quadratic1D q = cweno3_polynomial_1d(um, u, up, params);
  return {q(-0.5), q(0.5)};
}

double Biquadratic::operator()(double x, double y) const {
  const double r0 = c[0] + y * (c[1] + y * c[2]);
  const double r1 = c[3] + y * (c[4] + y * c[5]);
  const double r2 = c[6] + y * (c[7] + y * c[8]);
  return r0 + x * (r1 + x * r2);
}

Biquadratic cweno3_polynomial_2d(const Stencil2D& s, const CwenoParameters& params) {
  // Optimal biquadratic Q S Q^T.
  double qs[3][3];
  for (int p = 0; p < 3; ++p) {
    for (int b = 0; b < 3; ++b) {
      qs[p][b] = kQ[p][0] * s[b] + kQ[p][1] * s[3 + b] + kQ[p][2] * s[6 + b];
    }
  }
  std::array<double, 9> central;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      central[3 * p + q] = qs[p][0] * kQ[q][0] + qs[p][1] * kQ[q][1] + qs[p][2] * kQ[q][2];
    }
  }

  // Bilinear sector (sx, sy) interpolates the averages of the centre, the two
  // edge neighbours and the corner neighbour on that side.
  const double a00 = s[4];
  const double west = s[1] - a00, east = s[7] - a00;
  const double south = s[3] - a00, north = s[5] - a00;
  std::array<double, 9> sector[4];
  double sector_weight[4];
  int k = 0;
  for (int sx : {-1, 1}) {
    const double dx = sx < 0 ? west : east;
    for (int sy : {-1, 1}) {
      const double dy = sy < 0 ? south : north;
      const double corner = s[static_cast<std::size_t>(3 * (sx + 1) + (sy + 1))] - a00;
      auto& c = sector[k];
      c = {a00, sy * dy, 0.0, sx * dx, sx * sy * (corner - dx - dy), 0.0, 0.0, 0.0, 0.0};
      sector_weight[k] = nonlinear_weight(kSector2D, bilinear_indicator(c), params);
      ++k;
    }
  }

  // Central polynomial (P_opt - sum_k d_k P_k) / d_C; the sector sum is
  // written out in closed form.
  central[0] -= kSector2D * 4.0 * a00;
  central[3] -= kSector2D * 2.0 * (east - west);
  central[1] -= kSector2D * 2.0 * (north - south);
  central[4] -= kSector2D * (s[8] - s[6] - s[2] + s[0]);
  for (double& c : central) c /= kCentral2D;

  const double wc = nonlinear_weight(kCentral2D, indicator(central), params);
  const double inv_total =
      1.0 / (wc + sector_weight[0] + sector_weight[1] + sector_weight[2] + sector_weight[3]);

  Biquadratic out;
  for (std::size_t i = 0; i < 9; ++i) out.c[i] = wc * central[i];
  for (int j = 0; j < 4; ++j) {
    for (std::size_t i : {0, 1, 3, 4}) out.c[i] += sector_weight[j] * sector[j][i];
  }
  for (double& c : out.c) c *= inv_total;
  return out;
}

std::array<double, 8> cweno3_reconstruct_2d(const Stencil2D& s,
                                            const CwenoParameters& params) {
  const Biquadratic p = cweno3_polynomial_2d(s, params);
  const double g = kGaussOffset;
  return {p(-0.5, -g), p(-0.5, g), p(0.5, -g), p(0.5, g),
          p(-g, -0.5), p(g, -0.5), p(-g, 0.5), p(g, 0.5)};
}

}  // namespace hsg
