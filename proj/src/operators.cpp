#include "mwkr/operators.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "mwkr/error.hpp"

namespace mwkr {

namespace {

// x / h as an integer when x is a lattice multiple of h.
bool lattice_multiple(double x, double h, long& out) {
  const double q = x / h;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return false;
  out = static_cast<long>(r);
  return true;
}

}  // namespace

SampledVectorField translate_cells(const SampledVectorField& f, const Grid::Cell& shift) {
  const Grid& g = f.grid();
  SampledVectorField out(g, f.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Grid::Cell src = g.cell(i);
    src[0] -= shift[0];
    if (g.dim() == 2) src[1] -= shift[1];
    if (!g.in_range(src)) continue;
    out.value(i) = f.value(g.index(src));
  }
  return out;
}

SampledVectorField translate(const SampledVectorField& f, const Grid::Point& y) {
  const Grid& g = f.grid();
  Grid::Cell shift{0, 0};
  for (int k = 0; k < g.dim(); ++k) {
    long s = 0;
    require(lattice_multiple(y[static_cast<std::size_t>(k)], g.spacing(), s), ErrorCode::OffLattice,
            "translation is not a multiple of the cell width");
    if (std::abs(s) > g.points_per_axis()) s = s > 0 ? g.points_per_axis() : -g.points_per_axis();
    shift[static_cast<std::size_t>(k)] = static_cast<int>(s);
  }
  return translate_cells(f, shift);
}

std::vector<Grid::Cell> lattice_shifts(const Grid& grid, double r) {
  const double h = grid.spacing();
  const int reach = static_cast<int>(std::floor(r / h + 1e-9));
  std::vector<Grid::Cell> out;
  const double limit = r * r * (1.0 + 1e-12);
  for (int a = -reach; a <= reach; ++a) {
    if (grid.dim() == 1) {
      out.push_back({a, 0});
      continue;
    }
    for (int b = -reach; b <= reach; ++b)
      if (static_cast<double>(a * a + b * b) * h * h <= limit) out.push_back({a, b});
  }
  return out;
}

DyadicScheme::DyadicScheme(const Grid& grid, int m, int t) : grid_(grid), m_(m), t_(t) {
  require(t <= m, ErrorCode::SchemeMismatch, "inner generation exceeds outer generation");
  const double h = grid.spacing();
  const double half = std::ldexp(1.0, m);
  require(half <= grid.half_width(), ErrorCode::SchemeMismatch, "R_m extends beyond the grid box");
  long side = 0;
  long first = 0;
  require(lattice_multiple(std::ldexp(1.0, t), h, side) && side >= 1, ErrorCode::SchemeMismatch,
          "dyadic cube side is not a whole number of cells");
  require(std::has_single_bit(static_cast<unsigned long>(side)), ErrorCode::SchemeMismatch,
          "dyadic cube side must be a power-of-two number of cells");
  require(lattice_multiple(grid.half_width() - half, h, first), ErrorCode::SchemeMismatch,
          "R_m does not start on a cell boundary");
  side_ = static_cast<int>(side);
  first_ = static_cast<int>(first);
  cubes_per_axis_ = 1 << (m + 1 - t);
  cube_count_ = grid.dim() == 1 ? static_cast<std::size_t>(cubes_per_axis_)
                                : static_cast<std::size_t>(cubes_per_axis_) * static_cast<std::size_t>(cubes_per_axis_);
  owner_.assign(grid.size(), -1);
  const int extent = cubes_per_axis_ * side_;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Grid::Cell c = grid.cell(i);
    std::ptrdiff_t idx = 0;
    bool inside = true;
    for (int k = 0; k < grid.dim(); ++k) {
      const int rel = c[static_cast<std::size_t>(k)] - first_;
      if (rel < 0 || rel >= extent) {
        inside = false;
        break;
      }
      idx = idx * cubes_per_axis_ + rel / side_;
    }
    if (inside) owner_[i] = idx;
  }
}

std::size_t DyadicScheme::cells_per_cube() const noexcept {
  const auto s = static_cast<std::size_t>(side_);
  return grid_.dim() == 1 ? s : s * s;
}

std::vector<std::size_t> DyadicScheme::cube_cells(std::size_t j) const {
  std::vector<std::size_t> out;
  out.reserve(cells_per_cube());
  if (grid_.dim() == 1) {
    const int lo = first_ + static_cast<int>(j) * side_;
    for (int a = 0; a < side_; ++a) out.push_back(grid_.index({lo + a, 0}));
    return out;
  }
  const int row = first_ + static_cast<int>(j / static_cast<std::size_t>(cubes_per_axis_)) * side_;
  const int col = first_ + static_cast<int>(j % static_cast<std::size_t>(cubes_per_axis_)) * side_;
  for (int a = 0; a < side_; ++a)
    for (int b = 0; b < side_; ++b) out.push_back(grid_.index({row + a, col + b}));
  return out;
}

std::vector<std::uint8_t> DyadicScheme::support_mask() const {
  std::vector<std::uint8_t> out(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = owner_[i] >= 0 ? 1 : 0;
  return out;
}

std::vector<cplx> dyadic_coefficients(const SampledVectorField& f, const DyadicScheme& scheme, Backend backend) {
  require_same_grid(f.grid(), scheme.grid(), "dyadic scheme");
  const int d = f.dim();
  const double count = static_cast<double>(scheme.cells_per_cube());
  std::vector<cplx> out(scheme.cube_count() * static_cast<std::size_t>(d));
  for_each_index(backend, scheme.cube_count(), [&](std::size_t j) {
    const auto cells = scheme.cube_cells(j);
    std::vector<double> re(cells.size());
    std::vector<double> im(cells.size());
    for (int c = 0; c < d; ++c) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const cplx z = f.at(cells[k])[static_cast<std::size_t>(c)];
        re[k] = z.real();
        im[k] = z.imag();
      }
      out[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] =
          cplx(pairwise_sum(re) / count, pairwise_sum(im) / count);
    }
  });
  return out;
}

SampledVectorField dyadic_expand(std::span<const cplx> coefficients, const DyadicScheme& scheme, int dim) {
  require(coefficients.size() == scheme.cube_count() * static_cast<std::size_t>(dim), ErrorCode::SchemeMismatch,
          "coefficient count does not match the scheme");
  SampledVectorField out(scheme.grid(), dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::ptrdiff_t j = scheme.cube_of(i);
    if (j < 0) continue;
    for (int c = 0; c < dim; ++c)
      out.value(i)(c) = coefficients[static_cast<std::size_t>(j) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)];
  }
  return out;
}

SampledVectorField dyadic_average(const SampledVectorField& f, const DyadicScheme& scheme, Backend backend) {
  return dyadic_expand(dyadic_coefficients(f, scheme, backend), scheme, f.dim());
}

BallScheme::BallScheme(const Grid& grid, double radius) : grid_(grid), radius_(radius) {
  const double h = grid.spacing();
  require(std::isfinite(radius) && radius >= 2.0 * h * (1.0 - 1e-12), ErrorCode::InvalidArgument,
          "ball radius must be at least two cell widths");
  reach_ = 0;
  while ((reach_ + 1) * h < radius) ++reach_;
  for (int a = -reach_; a <= reach_; ++a) {
    if (grid.dim() == 1) {
      offsets_.push_back({a, 0});
      continue;
    }
    for (int b = -reach_; b <= reach_; ++b)
      if (contains({a, b})) offsets_.push_back({a, b});
  }
}

bool BallScheme::contains(const Grid::Cell& offset) const noexcept {
  const double h = grid_.spacing();
  if (grid_.dim() == 1) return std::abs(offset[0]) * h < radius_;
  const double a = offset[0] * h;
  const double b = offset[1] * h;
  return a * a + b * b < radius_ * radius_;
}

std::vector<std::size_t> BallScheme::cells(std::size_t center) const {
  const Grid::Cell c = grid_.cell(center);
  std::vector<std::size_t> out;
  out.reserve(offsets_.size());
  for (const auto& o : offsets_) {
    const Grid::Cell q{c[0] + o[0], c[1] + o[1]};
    if (grid_.in_range(q)) out.push_back(grid_.index(q));
  }
  return out;
}

namespace {

bool evaluated(CellMask eval, std::size_t i) { return eval.empty() || eval[i] != 0; }

SampledVectorField ball_average_line(const SampledVectorField& f, const MeasureDensity& mu, const BallScheme& scheme,
                                     CellMask eval, Backend backend) {
  const Grid& g = f.grid();
  const int d = f.dim();
  const int n = g.points_per_axis();
  const double vol = g.cell_volume();
  std::vector<double> mass(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<cplx> moment((static_cast<std::size_t>(n) + 1) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double w = mu[k] * vol;
    mass[k + 1] = mass[k] + w;
    for (int c = 0; c < d; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      moment[(k + 1) * d + cc] = moment[k * d + cc] + f.at(k)[cc] * w;
    }
  }
  SampledVectorField out(g, d);
  const int reach = scheme.reach();
  for_each_index(backend, f.size(), [&](std::size_t i) {
    if (!evaluated(eval, i)) return;
    const int x = static_cast<int>(i);
    const auto lo = static_cast<std::size_t>(std::max(0, x - reach));
    const auto hi = static_cast<std::size_t>(std::min(n, x + reach + 1));
    const double m = mass[hi] - mass[lo];
    require(m > 0.0, ErrorCode::EmptyBall, "ball has zero measure");
    for (int c = 0; c < d; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      out.value(i)(c) = (moment[hi * d + cc] - moment[lo * d + cc]) / m;
    }
  });
  return out;
}

SampledVectorField ball_average_plane(const SampledVectorField& f, const MeasureDensity& mu, const BallScheme& scheme,
                                      CellMask eval, Backend backend) {
  const Grid& g = f.grid();
  const int d = f.dim();
  const double vol = g.cell_volume();
  SampledVectorField out(g, d);
  for_each_index(backend, f.size(), [&](std::size_t i) {
    if (!evaluated(eval, i)) return;
    const Grid::Cell c = g.cell(i);
    double m = 0.0;
    CVector acc = CVector::Zero(d);
    for (const auto& o : scheme.offsets()) {
      const Grid::Cell q{c[0] + o[0], c[1] + o[1]};
      if (!g.in_range(q)) continue;
      const std::size_t k = g.index(q);
      const double w = mu[k] * vol;
      if (w == 0.0) continue;
      m += w;
      acc += w * f.value(k);
    }
    require(m > 0.0, ErrorCode::EmptyBall, "ball has zero measure");
    out.value(i) = acc / m;
  });
  return out;
}

}  // namespace

SampledVectorField ball_average(const SampledVectorField& f, const MeasureDensity& mu, const BallScheme& scheme,
                                CellMask eval, Backend backend) {
  require_same_grid(f.grid(), scheme.grid(), "ball scheme");
  require_same_grid(f.grid(), mu.grid(), "measure density");
  require(eval.empty() || eval.size() == f.size(), ErrorCode::ShapeMismatch, "mask size does not match grid");
  if (f.grid().dim() == 1) return ball_average_line(f, mu, scheme, eval, backend);
  return ball_average_plane(f, mu, scheme, eval, backend);
}

std::vector<double> dyadic_radii(const Grid& grid) {
  std::vector<double> out;
  for (double r = 2.0 * grid.spacing(); r <= grid.half_width() * (1.0 + 1e-12); r *= 2.0) out.push_back(r);
  return out;
}

namespace {

// Largest Lebesgue mean of g over balls B(z, r) that contain x, on a line.
double best_line_mean(const std::vector<double>& prefix, int x, int n, const std::vector<int>& reaches) {
  double best = 0.0;
  for (int k : reaches) {
    for (int z = std::max(0, x - k); z <= std::min(n - 1, x + k); ++z) {
      const int lo = std::max(0, z - k);
      const int hi = std::min(n, z + k + 1);
      const auto slo = static_cast<std::size_t>(lo);
      const auto shi = static_cast<std::size_t>(hi);
      best = std::max(best, (prefix[shi] - prefix[slo]) / (hi - lo));
    }
  }
  return best;
}

double best_plane_mean(const std::vector<double>& g, const Grid& grid, std::size_t x,
                       const std::vector<BallScheme>& balls) {
  const Grid::Cell cx = grid.cell(x);
  double best = 0.0;
  for (const BallScheme& ball : balls) {
    for (const auto& o : ball.offsets()) {
      const Grid::Cell z{cx[0] - o[0], cx[1] - o[1]};
      if (!grid.in_range(z)) continue;
      double sum = 0.0;
      int count = 0;
      for (const auto& q : ball.offsets()) {
        const Grid::Cell y{z[0] + q[0], z[1] + q[1]};
        if (!grid.in_range(y)) continue;
        sum += g[grid.index(y)];
        ++count;
      }
      best = std::max(best, sum / count);
    }
  }
  return best;
}

}  // namespace

ScalarWeightField christ_goldberg_maximal(const SampledVectorField& f, const MatrixWeightField& w, double p,
                                          const std::vector<double>& radii, Backend backend) {
  require_same_grid(f.grid(), w.grid(), "matrix weight");
  require(f.dim() == w.dim(), ErrorCode::ShapeMismatch, "field and weight dimensions differ");
  require(w.invertible(), ErrorCode::NotInvertible, "maximal operator needs an invertible weight");
  require(!radii.empty(), ErrorCode::InvalidArgument, "maximal operator needs at least one radius");
  const Grid& grid = f.grid();
  const std::vector<CMatrix> forward = w.powers(1.0 / p);
  const std::vector<CMatrix> inverse = w.powers(-1.0 / p);
  std::vector<CVector> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = inverse[i] * f.value(i);

  std::vector<BallScheme> balls;
  std::vector<int> reaches;
  for (double r : radii) {
    balls.emplace_back(grid, r);
    reaches.push_back(balls.back().reach());
  }
  std::vector<double> out(f.size());
  const int n = grid.points_per_axis();
  for_each_index(backend, f.size(), [&](std::size_t x) {
    std::vector<double> g(f.size());
    for (std::size_t y = 0; y < f.size(); ++y) g[y] = (forward[x] * v[y]).norm();
    if (grid.dim() == 1) {
      std::vector<double> prefix(f.size() + 1, 0.0);
      for (std::size_t y = 0; y < f.size(); ++y) prefix[y + 1] = prefix[y] + g[y];
      out[x] = best_line_mean(prefix, static_cast<int>(x), n, reaches);
    } else {
      out[x] = best_plane_mean(g, grid, x, balls);
    }
  });
  return ScalarWeightField(grid, std::move(out));
}

DominationRatio maximal_domination_ratio(const SampledVectorField& f, const MatrixWeightField& w, double p, double r,
                                         const std::vector<double>& radii, Backend backend) {
  const BallScheme ball(f.grid(), r);
  const SampledVectorField avg = ball_average(f, MeasureDensity::lebesgue(f.grid()), ball, {}, backend);
  const std::vector<CMatrix> forward = w.powers(1.0 / p);
  SampledVectorField lifted(f.grid(), f.dim());
  for (std::size_t i = 0; i < f.size(); ++i) lifted.value(i) = forward[i] * f.value(i);
  const ScalarWeightField maximal = christ_goldberg_maximal(lifted, w, p, radii, backend);
  DominationRatio out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (maximal[i] <= 0.0) continue;
    const double ratio = (forward[i] * avg.value(i)).norm() / maximal[i];
    if (ratio > out.ratio) {
      out.ratio = ratio;
      out.worst_point = i;
    }
  }
  return out;
}

double symdiff_measure(std::size_t x, std::size_t y, double r, const MeasureDensity& mu) {
  const Grid& g = mu.grid();
  const BallScheme ball(g, r);
  const Grid::Cell cx = g.cell(x);
  const Grid::Cell cy = g.cell(y);
  std::vector<double> terms(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Grid::Cell c = g.cell(i);
    const bool in_x = ball.contains({c[0] - cx[0], c[1] - cx[1]});
    const bool in_y = ball.contains({c[0] - cy[0], c[1] - cy[1]});
    if (in_x != in_y) terms[i] = mu[i] * g.cell_volume();
  }
  return pairwise_sum(terms);
}

}  // namespace mwkr
