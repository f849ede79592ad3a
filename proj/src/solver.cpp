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

#include "hsg/solver.hpp"

#include "hsg/error.hpp"
#include "hsg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsg {

namespace {

constexpr int G = Grid::kGhost;

int source_index(int p, int n, Boundary boundary) {
  const int i = p - G;
  if (boundary == Boundary::Periodic) return ((i % n) + n) % n;
  return std::clamp(i, 0, n - 1);
}

// Copies the field into a (nx + 4) x (ny + 4) array (one row in 1D) with
// ghost cells filled according to the boundary kind.
void pad(const GpcField& u, std::vector<double>& out) {
  const Grid& g = u.grid();
  const int s = u.stride();
  const int width = g.nx + 2 * G;
  const int height = g.dim == 2 ? g.ny + 2 * G : 1;
  out.resize(static_cast<std::size_t>(width) * height * s);
  for (int pj = 0; pj < height; ++pj) {
    const int j = g.dim == 2 ? source_index(pj, g.ny, g.boundary) : 0;
    for (int pi = 0; pi < width; ++pi) {
      const int i = source_index(pi, g.nx, g.boundary);
      std::copy_n(u.cell(i, j), s, out.data() + (static_cast<std::size_t>(pj) * width + pi) * s);
    }
  }
}

// Mode <-> spectrum transforms of all components of one state.
class Transform {
 public:
  explicit Transform(const Model& model)
      : tensor_(model.tensor()), m_(model.components()), n_(model.modes()),
        trivial_(n_ == 1 && tensor_.analysis()(0, 0) == 1.0 &&
                 tensor_.synthesis()(0, 0) == 1.0) {}

  void to_spectra(const double* modes, double* spectra) const {
    if (trivial_) {
      std::copy_n(modes, m_, spectra);
      return;
    }
    for (int c = 0; c < m_; ++c) {
      Eigen::Map<Eigen::VectorXd>(spectra + c * n_, n_).noalias() =
          tensor_.analysis().transpose() * Eigen::Map<const Eigen::VectorXd>(modes + c * n_, n_);
    }
  }

  void from_spectra(const double* spectra, double* modes) const {
    if (trivial_) {
      std::copy_n(spectra, m_, modes);
      return;
    }
    for (int c = 0; c < m_; ++c) {
      Eigen::Map<Eigen::VectorXd>(modes + c * n_, n_).noalias() =
          tensor_.synthesis() * Eigen::Map<const Eigen::VectorXd>(spectra + c * n_, n_);
    }
  }

 private:
  const GalerkinTensor& tensor_;
  int m_;
  int n_;
  bool trivial_;
};

// Adds weight * LLF(left, right) in spectral variables to `out`.
struct LlfWorkspace {
  explicit LlfWorkspace(int size) : wl(size), wr(size), fl(size), fr(size) {}
  std::vector<double> wl, wr, fl, fr;
};

void accumulate_llf(const Model& model, const Transform& transform, const double* left,
                    const double* right, Normal n, double weight, LlfWorkspace& ws,
                    double* out) {
  const int size = static_cast<int>(ws.wl.size());
  transform.to_spectra(left, ws.wl.data());
  transform.to_spectra(right, ws.wr.data());
  const double alpha = std::max(model.spectral_flux_and_speed(ws.wl.data(), n, ws.fl.data()),
                                model.spectral_flux_and_speed(ws.wr.data(), n, ws.fr.data()));
  for (int k = 0; k < size; ++k) {
    out[k] += weight * (0.5 * (ws.fl[k] + ws.fr[k]) - 0.5 * alpha * (ws.wr[k] - ws.wl[k]));
  }
}

[[noreturn]] void rethrow_located(const AdmissibilityError& e, double x, double y, int dim) {
  std::ostringstream msg;
  msg << "face at x = " << x;
  if (dim == 2) msg << ", y = " << y;
  msg << ": " << e.what();
  throw AdmissibilityError(msg.str(), e.cell());
}

}  // namespace

CellState llf_flux(const Model& model, const CellState& left, const CellState& right,
                   Normal n) {
  const double alpha = std::max(model.max_wave_speed(left, n), model.max_wave_speed(right, n));
  return 0.5 * (model.flux(left, n) + model.flux(right, n)) - 0.5 * alpha * (right - left);
}

GpcField source_quadrature(const SourceTerm& source, const GpcField& field, double t,
                           const CwenoParameters& params) {
  const Grid& g = field.grid();
  GpcField out(g, field.components(), field.modes());
  if (!source) return out;
  std::vector<double> padded;
  pad(field, padded);
  const int s = field.stride();
  const int width = g.nx + 2 * G;
  std::vector<double> point(static_cast<std::size_t>(s));
  std::vector<double> value(static_cast<std::size_t>(s));
  const double nodes[2] = {-kGaussOffset, kGaussOffset};
  auto at = [&](int pi, int pj, int k) {
    return padded[(static_cast<std::size_t>(pj) * width + pi) * s + k];
  };
  const int ny = g.dim == 2 ? g.ny : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int pi = i + G;
      const int pj = g.dim == 2 ? j + G : 0;
      double* target = out.cell(i, j);
      if (g.dim == 1) {
        std::vector<Quadratic1D> poly(static_cast<std::size_t>(s));
        for (int k = 0; k < s; ++k) {
          poly[static_cast<std::size_t>(k)] =
              cweno3_polynomial_1d(at(pi - 1, 0, k), at(pi, 0, k), at(pi + 1, 0, k), params);
        }
        for (double xq : nodes) {
          for (int k = 0; k < s; ++k) point[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(k)](xq);
          source(g.x_center(i) + xq * g.dx(), 0.0, t, point.data(), value.data());
          for (int k = 0; k < s; ++k) target[k] += 0.5 * value[static_cast<std::size_t>(k)];
        }
        continue;
      }
      std::vector<Biquadratic> poly(static_cast<std::size_t>(s));
      for (int k = 0; k < s; ++k) {
        Stencil2D st;
        for (int a = -1; a <= 1; ++a) {
          for (int b = -1; b <= 1; ++b) st[static_cast<std::size_t>(3 * (a + 1) + (b + 1))] = at(pi + a, pj + b, k);
        }
        poly[static_cast<std::size_t>(k)] = cweno3_polynomial_2d(st, params);
      }
      for (double xq : nodes) {
        for (double yq : nodes) {
          for (int k = 0; k < s; ++k) point[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(k)](xq, yq);
          source(g.x_center(i) + xq * g.dx(), g.y_center(j) + yq * g.dy(), t, point.data(),
                 value.data());
          for (int k = 0; k < s; ++k) target[k] += 0.25 * value[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  return out;
}

SemiDiscrete::SemiDiscrete(const Model& model, const Grid& grid, SchemeOptions options,
                           SourceTerm source)
    : model_(model), grid_(grid), options_(options), source_(std::move(source)),
      stride_(model.state_size()) {
  if (grid_.dim == 1) grid_.ny = 1;
  grid_.validate();
  if (grid_.dim != model.space_dim()) {
    throw InvalidArgument("grid dimension does not match the model");
  }
}

void SemiDiscrete::evaluate(const GpcField& u, double t, GpcField& rhs) {
  if (u.stride() != stride_ || !(u.grid() == grid_)) {
    throw InvalidArgument("field does not match the semi-discretization");
  }
  if (rhs.stride() != stride_ || !(rhs.grid() == grid_)) {
    rhs = GpcField(grid_, model_.components(), model_.modes());
  }
  pad(u, padded_);
  if (grid_.dim == 1) {
    evaluate_1d(rhs);
  } else {
    evaluate_2d(rhs);
  }
  if (source_) add_source(u, t, rhs);
}

void SemiDiscrete::evaluate_1d(GpcField& rhs) {
  const int nx = grid_.nx;
  const int s = stride_;
  const double dx = grid_.dx();
  const CwenoParameters params = options_.cweno;
  const int threads = options_.threads;

  // Interface values of cells -1 .. nx.
  faces_.resize(static_cast<std::size_t>(nx + 2) * 2 * s);
  parallel_for(nx + 2, threads, [&](int begin, int end) {
    for (int c = begin; c < end; ++c) {
      const int pi = c - 1 + G;
      const double* um = padded_.data() + static_cast<std::size_t>(pi - 1) * s;
      const double* u0 = um + s;
      const double* up = u0 + s;
      double* out = faces_.data() + static_cast<std::size_t>(c) * 2 * s;
      for (int k = 0; k < s; ++k) {
        const InterfaceValues v = cweno3_reconstruct_1d(um[k], u0[k], up[k], params);
        out[k] = v.left;
        out[s + k] = v.right;
      }
    }
  });

  const Transform transform(model_);
  flux_x_.assign(static_cast<std::size_t>(nx + 1) * s, 0.0);
  parallel_for(nx + 1, threads, [&](int begin, int end) {
    LlfWorkspace ws(s);
    for (int f = begin; f < end; ++f) {
      const double* left = faces_.data() + (static_cast<std::size_t>(f) * 2 + 1) * s;
      const double* right = faces_.data() + static_cast<std::size_t>(f + 1) * 2 * s;
      try {
        accumulate_llf(model_, transform, left, right, axis_normal(0), 1.0, ws,
                       flux_x_.data() + static_cast<std::size_t>(f) * s);
      } catch (const AdmissibilityError& e) {
        rethrow_located(e, grid_.x_min + f * dx, 0.0, 1);
      }
    }
  });

  parallel_for(nx, threads, [&](int begin, int end) {
    std::vector<double> spec(static_cast<std::size_t>(s));
    for (int i = begin; i < end; ++i) {
      const double* fl = flux_x_.data() + static_cast<std::size_t>(i) * s;
      const double* fr = fl + s;
      for (int k = 0; k < s; ++k) spec[static_cast<std::size_t>(k)] = -(fr[k] - fl[k]) / dx;
      transform.from_spectra(spec.data(), rhs.cell(i));
    }
  });
}

void SemiDiscrete::evaluate_2d(GpcField& rhs) {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const int s = stride_;
  const int width = nx + 2 * G;
  const int rec_width = nx + 2;
  const double dx = grid_.dx();
  const double dy = grid_.dy();
  const CwenoParameters params = options_.cweno;
  const int threads = options_.threads;

  // Face Gauss-point values of cells (-1 .. nx) x (-1 .. ny), corners skipped.
  faces_.resize(static_cast<std::size_t>(rec_width) * (ny + 2) * 8 * s);
  parallel_for(ny + 2, threads, [&](int begin, int end) {
    Stencil2D st;
    for (int rj = begin; rj < end; ++rj) {
      const int j = rj - 1;
      for (int ri = 0; ri < rec_width; ++ri) {
        const int i = ri - 1;
        if ((i < 0 || i >= nx) && (j < 0 || j >= ny)) continue;
        const int pi = i + G;
        const int pj = j + G;
        double* out = faces_.data() + (static_cast<std::size_t>(rj) * rec_width + ri) * 8 * s;
        for (int k = 0; k < s; ++k) {
          for (int a = -1; a <= 1; ++a) {
            const double* row =
                padded_.data() + (static_cast<std::size_t>(pj - 1) * width + (pi + a)) * s + k;
            st[static_cast<std::size_t>(3 * (a + 1))] = row[0];
            st[static_cast<std::size_t>(3 * (a + 1) + 1)] = row[static_cast<std::size_t>(width) * s];
            st[static_cast<std::size_t>(3 * (a + 1) + 2)] = row[static_cast<std::size_t>(2 * width) * s];
          }
          const std::array<double, 8> v = cweno3_reconstruct_2d(st, params);
          for (int p = 0; p < 8; ++p) out[static_cast<std::size_t>(p) * s + k] = v[static_cast<std::size_t>(p)];
        }
      }
    }
  });

  auto point = [&](int i, int j, int p) {
    return faces_.data() +
           ((static_cast<std::size_t>(j + 1) * rec_width + (i + 1)) * 8 + p) * s;
  };
  const Transform transform(model_);

  // x-faces (i - 1/2, j) for i = 0 .. nx; y-faces (i, j - 1/2) for j = 0 .. ny.
  flux_x_.assign(static_cast<std::size_t>(nx + 1) * ny * s, 0.0);
  flux_y_.assign(static_cast<std::size_t>(nx) * (ny + 1) * s, 0.0);
  parallel_for(ny + 1, threads, [&](int begin, int end) {
    LlfWorkspace ws(s);
    for (int j = begin; j < end; ++j) {
      const double y_face = grid_.y_min + j * dy;
      if (j < ny) {
        for (int i = 0; i <= nx; ++i) {
          double* out = flux_x_.data() + (static_cast<std::size_t>(j) * (nx + 1) + i) * s;
          try {
            for (int g = 0; g < 2; ++g) {
              accumulate_llf(model_, transform, point(i - 1, j, 2 + g), point(i, j, g),
                             axis_normal(0), 0.5, ws, out);
            }
          } catch (const AdmissibilityError& e) {
            rethrow_located(e, grid_.x_min + i * dx, grid_.y_center(j), 2);
          }
        }
      }
      for (int i = 0; i < nx; ++i) {
        double* out = flux_y_.data() + (static_cast<std::size_t>(j) * nx + i) * s;
        try {
          for (int g = 0; g < 2; ++g) {
            accumulate_llf(model_, transform, point(i, j - 1, 6 + g), point(i, j, 4 + g),
                           axis_normal(1), 0.5, ws, out);
          }
        } catch (const AdmissibilityError& e) {
          rethrow_located(e, grid_.x_center(i), y_face, 2);
        }
      }
    }
  });

  parallel_for(ny, threads, [&](int begin, int end) {
    std::vector<double> spec(static_cast<std::size_t>(s));
    for (int j = begin; j < end; ++j) {
      for (int i = 0; i < nx; ++i) {
        const double* fw = flux_x_.data() + (static_cast<std::size_t>(j) * (nx + 1) + i) * s;
        const double* fe = fw + s;
        const double* fs = flux_y_.data() + (static_cast<std::size_t>(j) * nx + i) * s;
        const double* fn = fs + static_cast<std::size_t>(nx) * s;
        for (int k = 0; k < s; ++k) {
          spec[static_cast<std::size_t>(k)] = -(fe[k] - fw[k]) / dx - (fn[k] - fs[k]) / dy;
        }
        transform.from_spectra(spec.data(), rhs.cell(i, j));
      }
    }
  });
}

void SemiDiscrete::add_source(const GpcField& u, double t, GpcField& rhs) const {
  const GpcField contribution = source_quadrature(source_, u, t, options_.cweno);
  for (std::size_t k = 0; k < rhs.data().size(); ++k) rhs.data()[k] += contribution.data()[k];
}

GpcField ssprk3_step(const RhsFunction& rhs, const GpcField& u, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const double t = u.time();
  GpcField l;
  auto stage = [&](int index, const GpcField& state, double time) {
    try {
      rhs(state, time, l);
    } catch (const Error& e) {
      throw SolverError("Runge-Kutta stage " + std::to_string(index) + ": " + e.what());
    }
  };
  const auto& u0 = u.data();

  stage(1, u, t);
  GpcField u1 = u;
  for (std::size_t k = 0; k < u0.size(); ++k) u1.data()[k] = u0[k] + dt * l.data()[k];
  u1.set_time(t + dt);

  stage(2, u1, t + dt);
  GpcField u2 = u;
  for (std::size_t k = 0; k < u0.size(); ++k) {
    u2.data()[k] = 0.75 * u0[k] + 0.25 * (u1.data()[k] + dt * l.data()[k]);
  }
  u2.set_time(t + 0.5 * dt);

  stage(3, u2, t + 0.5 * dt);
  GpcField out = u;
  for (std::size_t k = 0; k < u0.size(); ++k) {
    out.data()[k] = u0[k] / 3.0 + 2.0 / 3.0 * (u2.data()[k] + dt * l.data()[k]);
  }
  out.set_time(t + dt);
  return out;
}

double compute_dt(const Model& model, const GpcField& field, double cfl, double t,
                  double t_final, int threads) {
  const Grid& g = field.grid();
  const int ny = g.dim == 2 ? g.ny : 1;
  const int s = field.stride();
  const Transform transform(model);
  // Per row: the largest rate s/dx (1D) or s_x/dx + s_y/dy (2D).
  std::vector<double> rates(static_cast<std::size_t>(ny), 0.0);
  parallel_for(ny, threads, [&](int begin, int end) {
    std::vector<double> w(static_cast<std::size_t>(s));
    for (int j = begin; j < end; ++j) {
      double rate = 0.0;
      for (int i = 0; i < g.nx; ++i) {
        transform.to_spectra(field.cell(i, j), w.data());
        double r = model.spectral_max_speed(w.data(), axis_normal(0)) / g.dx();
        if (g.dim == 2) r += model.spectral_max_speed(w.data(), axis_normal(1)) / g.dy();
        rate = std::max(rate, r);
      }
      rates[static_cast<std::size_t>(j)] = rate;
    }
  });
  const double rate = *std::max_element(rates.begin(), rates.end());
  const double remaining = t_final - t;
  if (!(rate > 0.0)) return remaining;
  return std::min(cfl / rate, remaining);
}

namespace {

// Minimum constrained spectral value over cell averages; throws on loss of
// admissibility or non-finite data.
double monitor(const Model& model, const GpcField& field) {
  const auto& data = field.data();
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k])) {
      const std::size_t cell = k / static_cast<std::size_t>(field.stride());
      throw SolverError("non-finite value in grid cell " + std::to_string(cell));
    }
  }
  const auto c = model.positive_component();
  if (!c) return std::numeric_limits<double>::infinity();
  const int n = model.modes();
  const Grid& g = field.grid();
  double min = std::numeric_limits<double>::infinity();
  for (int index = 0; index < g.cells(); ++index) {
    const SpectrumVector d = model.tensor().to_spectrum(
        Eigen::Map<const Eigen::VectorXd>(field.cell(index) + *c * n, n));
    Eigen::Index l = 0;
    const double v = d.minCoeff(&l);
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "admissibility lost: component " << *c << " has spectral value " << v
          << " in stochastic cell " << l << " of grid cell (" << index % g.nx << ", "
          << index / g.nx << ")";
      throw SolverError(msg.str());
    }
    min = std::min(min, v);
  }
  return min;
}

}  // namespace

AdvanceStats advance(const Model& model, GpcField& field, double t_final,
                     const SchemeOptions& options, const StepCallback& callback,
                     const SourceTerm& source) {
  if (!(options.cfl > 0.0)) throw InvalidArgument("CFL number must be positive");
  AdvanceStats stats;
  stats.min_admissible = monitor(model, field);
  if (field.time() >= t_final) return stats;

  SemiDiscrete discretization(model, field.grid(), options, source);
  const RhsFunction rhs = [&](const GpcField& u, double t, GpcField& out) {
    discretization.evaluate(u, t, out);
  };
  const double tolerance = 1e-13 * std::max(1.0, std::abs(t_final));
  while (field.time() < t_final) {
    const double t = field.time();
    try {
      const double dt = compute_dt(model, field, options.cfl, t, t_final, options.threads);
      if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw SolverError("invalid time step " + std::to_string(dt));
      }
      GpcField next = ssprk3_step(rhs, field, dt);
      next.set_time(t_final - (t + dt) <= tolerance ? t_final : t + dt);
      stats.min_admissible = std::min(stats.min_admissible, monitor(model, next));
      field = std::move(next);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "solver aborted at t = " << t << ": " << e.what();
      throw SolverError(msg.str());
    }
    ++stats.steps;
    if (callback) callback(field, stats.steps);
  }
  return stats;
}

}  // namespace hsg
