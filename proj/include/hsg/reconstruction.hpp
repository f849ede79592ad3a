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

#ifndef HSG_RECONSTRUCTION_HPP
#define HSG_RECONSTRUCTION_HPP

#include <array>
#include <cmath>

namespace hsg {

struct CwenoParameters {
  double epsilon = 1e-6;
  double power = 2.0;

  bool operator==(const CwenoParameters&) const = default;
};

/// Offset of the two Gauss-Legendre nodes in a unit cell, 1/(2 sqrt 3).
inline constexpr double kGaussOffset = 0.28867513459481288225457439025098;

/// c0 + c1 x + c2 x^2 in the local coordinate x in [-1/2, 1/2].
struct Quadratic1D {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

/// Third-order CWENO polynomial of the cell with averages (um, u, up).
Quadratic1D cweno3_polynomial_1d(double um, double u, double up,
                                 const CwenoParameters& params = {});

struct InterfaceValues {
  double left;   // at x = -1/2
  double right;  // at x = +1/2
};

InterfaceValues cweno3_reconstruct_1d(double um, double u, double up,
                                      const CwenoParameters& params = {});

/// Sum of c[3p + q] x^p y^q on [-1/2, 1/2]^2.
struct Biquadratic {
  std::array<double, 9> c{};
  double operator()(double x, double y) const;
};

/// 3x3 stencil of cell averages, s[3 (a+1) + (b+1)] for the cell at x-offset
/// a and y-offset b.
using Stencil2D = std::array<double, 9>;

/// Genuinely two-dimensional CWENO polynomial: a central biquadratic blended
/// with the four bilinear corner-sector polynomials.
Biquadratic cweno3_polynomial_2d(const Stencil2D& s, const CwenoParameters& params = {});

/// Values at the two Gauss points of every face, ordered west (y = -g, +g),
/// east (y = -g, +g), south (x = -g, +g), north (x = -g, +g).
std::array<double, 8> cweno3_reconstruct_2d(const Stencil2D& s,
                                            const CwenoParameters& params = {});

}  // namespace hsg

#endif  // HSG_RECONSTRUCTION_HPP
