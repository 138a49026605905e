#include "hsl/grids.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "hsl/errors.hpp"

namespace hsl {
namespace {

// hi^s - lo^s for 0 <= lo < hi, s > 0, without cancellation for thin cells.
double power_difference(double lo, double hi, double s) {
  const double top = std::pow(hi, s);
  if (lo <= 0.0) return top;
  return -top * std::expm1(s * std::log(lo / hi));
}

// integral of r^{s-1} over [lo, hi].
double power_cell_integral(double lo, double hi, double s) {
  return power_difference(lo, hi, s) / s;
}

void check_weight(double a, int N) {
  if (!(a > -N)) {
    fail(ErrorCode::WeightNotIntegrable,
         "weight |x|^a is not integrable near the origin for a = " + std::to_string(a));
  }
}

}  // namespace

double unit_sphere_area(int N) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

RadialGrid::RadialGrid(int N, int m) : N_(N), m_(m), h_(1.0 / m), omega_(unit_sphere_area(N)) {
  if (N < 1) fail(ErrorCode::DimensionTooSmall, "radial grid needs N >= 1");
  if (m < 1) fail(ErrorCode::GridTooCoarse, "radial grid needs at least one cell");
}

std::vector<double> RadialGrid::cell_weights(double a) const {
  check_weight(a, N_);
  std::vector<double> w(m_);
  for (int i = 0; i < m_; ++i) {
    w[i] = omega_ * power_cell_integral(face(i), face(i + 1), a + N_);
  }
  return w;
}

DiskGrid::DiskGrid(int m_r, int m_t)
    : m_r_(m_r), m_t_(m_t), h_(1.0 / m_r), dtheta_(2.0 * std::numbers::pi / m_t) {
  if (m_r < 1 || m_t < 1) fail(ErrorCode::GridTooCoarse, "disk grid needs positive cell counts");
}

std::vector<double> DiskGrid::cell_weights(double a) const {
  check_weight(a, 2);
  std::vector<double> w(m_r_);
  for (int i = 0; i < m_r_; ++i) {
    w[i] = dtheta_ * power_cell_integral(i * h_, (i + 1) * h_, a + 2.0);
  }
  return w;
}

RadialFunction RadialFunction::sample(const RadialGrid& grid,
                                      const std::function<double(double)>& f) {
  RadialFunction u{grid, std::vector<double>(grid.cells())};
  for (int i = 0; i < grid.cells(); ++i) u.values[i] = f(grid.node(i));
  return u;
}

RadialFunction RadialFunction::zeros(const RadialGrid& grid) {
  return {grid, std::vector<double>(grid.cells(), 0.0)};
}

DiskFunction DiskFunction::sample(const DiskGrid& grid,
                                  const std::function<double(double, double)>& f) {
  DiskFunction u{grid, std::vector<double>(grid.size())};
  for (int i = 0; i < grid.radial_cells(); ++i)
    for (int j = 0; j < grid.angular_cells(); ++j)
      u.values[grid.index(i, j)] = f(grid.node(i), grid.angle(j));
  return u;
}

DiskFunction DiskFunction::zeros(const DiskGrid& grid) {
  return {grid, std::vector<double>(grid.size(), 0.0)};
}

DiskFunction DiskFunction::from_radial(const RadialFunction& u, int m_t) {
  DiskGrid grid(u.grid.cells(), m_t);
  DiskFunction d = zeros(grid);
  for (int i = 0; i < grid.radial_cells(); ++i)
    for (int j = 0; j < m_t; ++j) d.values[grid.index(i, j)] = u.values[i];
  return d;
}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < n) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::vector<double> Tridiagonal::solve(std::span<const double> b) const {
  const std::size_t n = diag.size();
  std::vector<double> c(n), x(n);
  double denom = diag[0];
  c[0] = n > 1 ? off[0] / denom : 0.0;
  x[0] = b[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - off[i - 1] * c[i - 1];
    if (i + 1 < n) c[i] = off[i] / denom;
    x[i] = (b[i] - off[i - 1] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

double Tridiagonal::quadratic_form(std::span<const double> x) const {
  const std::size_t n = diag.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += diag[i] * x[i] * x[i];
    if (i + 1 < n) s += 2.0 * off[i] * x[i] * x[i + 1];
  }
  return s;
}

Tridiagonal radial_stiffness(const RadialGrid& grid) {
  const int m = grid.cells();
  const double h = grid.spacing();
  const double omega = grid.surface_const();
  const int N = grid.dimension();
  Tridiagonal K{std::vector<double>(m, 0.0), std::vector<double>(m > 1 ? m - 1 : 0, 0.0)};
  for (int k = 0; k + 1 < m; ++k) {
    const double c = omega * std::pow(grid.face(k + 1), N - 1) / h;
    K.diag[k] += c;
    K.diag[k + 1] += c;
    K.off[k] = -c;
  }
  // Boundary face: (h/2) * ((0 - u)/(h/2))^2 = 2 u^2 / h.
  K.diag[m - 1] += 2.0 * omega / h;
  return K;
}

std::vector<double> radial_cell_measures(const RadialGrid& grid) {
  return grid.cell_weights(0.0);
}

double weighted_integral(const RadialFunction& f, double a) {
  const auto w = f.grid.cell_weights(a);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values[i];
  return s;
}

double weighted_integral(const DiskFunction& f, double a) {
  const auto w = f.grid.cell_weights(a);
  const int mt = f.grid.angular_cells();
  double s = 0.0;
  for (int i = 0; i < f.grid.radial_cells(); ++i) {
    double row = 0.0;
    for (int j = 0; j < mt; ++j) row += f.values[f.grid.index(i, j)];
    s += w[i] * row;
  }
  return s;
}

double radial_dirichlet_energy(const RadialFunction& u) {
  return radial_stiffness(u.grid).quadratic_form(u.values);
}

RadialFunction radial_laplacian(const RadialFunction& u) {
  if (u.grid.cells() < 3) fail(ErrorCode::GridTooCoarse, "radial Laplacian needs m >= 3");
  const auto Ku = radial_stiffness(u.grid).apply(u.values);
  const auto vol = radial_cell_measures(u.grid);
  RadialFunction out{u.grid, std::vector<double>(Ku.size())};
  for (std::size_t i = 0; i < Ku.size(); ++i) out.values[i] = -Ku[i] / vol[i];
  return out;
}

namespace {

void check_disk(const DiskGrid& g) {
  if (g.radial_cells() < 3 || g.angular_cells() < 8)
    fail(ErrorCode::GridTooCoarse, "disk operators need m_r >= 3 and m_t >= 8");
}

// Radial stiffness of the 2D energy per unit angle (omega factored out).
Tridiagonal disk_radial_stiffness(const DiskGrid& g) {
  Tridiagonal K = radial_stiffness(g.radial());
  const double inv = 1.0 / (2.0 * std::numbers::pi);
  for (auto& d : K.diag) d *= inv;
  for (auto& o : K.off) o *= inv;
  return K;
}

}  // namespace

// K_disk u = dtheta * (K_r (x) I) u + (diag(h/r) (x) C) u, where C is the
// periodic second difference divided by dtheta.
std::vector<double> disk_stiffness_apply(const DiskGrid& g, std::span<const double> v) {
  check_disk(g);
  const int mr = g.radial_cells();
  const int mt = g.angular_cells();
  const double dt = g.angle_step();
  const double h = g.spacing();
  const Tridiagonal Kr = disk_radial_stiffness(g);
  std::vector<double> out(v.size(), 0.0);
  for (int i = 0; i < mr; ++i) {
    const double ang = h / g.node(i) / dt;
    for (int j = 0; j < mt; ++j) {
      double s = Kr.diag[i] * v[g.index(i, j)];
      if (i > 0) s += Kr.off[i - 1] * v[g.index(i - 1, j)];
      if (i + 1 < mr) s += Kr.off[i] * v[g.index(i + 1, j)];
      s *= dt;
      const int jp = (j + 1) % mt;
      const int jm = (j + mt - 1) % mt;
      s += ang * (2.0 * v[g.index(i, j)] - v[g.index(i, jp)] - v[g.index(i, jm)]);
      out[g.index(i, j)] = s;
    }
  }
  return out;
}

double disk_dirichlet_energy(const DiskFunction& u) {
  const auto Ku = disk_stiffness_apply(u.grid, u.values);
  double s = 0.0;
  for (std::size_t k = 0; k < Ku.size(); ++k) s += Ku[k] * u.values[k];
  return s;
}

std::vector<double> disk_energy_gradient(const DiskFunction& u) {
  auto g = disk_stiffness_apply(u.grid, u.values);
  for (auto& x : g) x *= 2.0;
  return g;
}

DiskFunction disk_laplacian(const DiskFunction& u) {
  const auto Ku = disk_stiffness_apply(u.grid, u.values);
  const auto vol = u.grid.cell_weights(0.0);
  DiskFunction out{u.grid, std::vector<double>(Ku.size())};
  const int mt = u.grid.angular_cells();
  for (int i = 0; i < u.grid.radial_cells(); ++i)
    for (int j = 0; j < mt; ++j) {
      const int k = u.grid.index(i, j);
      out.values[k] = -Ku[k] / vol[i];
    }
  return out;
}

DiskPoissonSolver::DiskPoissonSolver(const DiskGrid& grid) : grid_(grid) {
  check_disk(grid);
  const int mt = grid.angular_cells();
  const int mr = grid.radial_cells();
  const double dt = grid.angle_step();
  const double h = grid.spacing();

  // Columns: constant, then cos/sin pairs, then the alternating mode for even m_t.
  basis_.resize(mt, mt);
  std::vector<double> mu(mt);
  int col = 0;
  for (int j = 0; j < mt; ++j) basis_(j, col) = 1.0 / std::sqrt(double(mt));
  mu[col++] = 0.0;
  for (int k = 1; 2 * k < mt; ++k) {
    const double lam = (2.0 - 2.0 * std::cos(k * dt)) / dt;
    for (int j = 0; j < mt; ++j) {
      basis_(j, col) = std::sqrt(2.0 / mt) * std::cos(k * j * dt);
      basis_(j, col + 1) = std::sqrt(2.0 / mt) * std::sin(k * j * dt);
    }
    mu[col] = mu[col + 1] = lam;
    col += 2;
  }
  if (mt % 2 == 0) {
    for (int j = 0; j < mt; ++j) basis_(j, col) = (j % 2 ? -1.0 : 1.0) / std::sqrt(double(mt));
    mu[col++] = 4.0 / dt;
  }

  const Tridiagonal Kr = disk_radial_stiffness(grid);
  modes_.reserve(mt);
  for (int c = 0; c < mt; ++c) {
    Tridiagonal A = Kr;
    for (auto& d : A.diag) d *= dt;
    for (auto& o : A.off) o *= dt;
    for (int i = 0; i < mr; ++i) A.diag[i] += mu[c] * h / grid.node(i);
    modes_.push_back(std::move(A));
  }
}

std::vector<double> DiskPoissonSolver::solve(std::span<const double> b) const {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int mr = grid_.radial_cells();
  const int mt = grid_.angular_cells();
  Eigen::Map<const RowMat> B(b.data(), mr, mt);
  Eigen::MatrixXd Bh = B * basis_;
  Eigen::MatrixXd Xh(mr, mt);
  std::vector<double> col(mr);
  for (int c = 0; c < mt; ++c) {
    for (int i = 0; i < mr; ++i) col[i] = Bh(i, c);
    const auto x = modes_[c].solve(col);
    for (int i = 0; i < mr; ++i) Xh(i, c) = x[i];
  }
  std::vector<double> out(static_cast<std::size_t>(mr) * mt);
  Eigen::Map<RowMat> X(out.data(), mr, mt);
  X.noalias() = Xh * basis_.transpose();
  return out;
}

RadialLemmaReport radial_lemma_check(const RadialFunction& u) {
  const int N = u.grid.dimension();
  if (N < 3) fail(ErrorCode::DimensionTooSmall, "radial lemma bound needs N >= 3");
  const double grad = std::sqrt(std::max(0.0, radial_dirichlet_energy(u)));
  const double c = grad / std::sqrt(u.grid.surface_const() * (N - 2.0));
  RadialLemmaReport rep{-INFINITY, -1, grad};
  for (int i = 0; i < u.grid.cells(); ++i) {
    const double bound = c / std::pow(u.grid.node(i), 0.5 * (N - 2));
    const double v = std::abs(u.values[i]) - bound;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_node = i;
    }
  }
  return rep;
}

namespace {

void write_values(std::ostream& os, const std::vector<double>& values) {
  char buf[64];
  for (double v : values) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, end - buf);
    os.put('\n');
  }
}

std::vector<double> read_values(std::istream& is, std::size_t n) {
  std::vector<double> values(n);
  std::string line;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::getline(is, line)) fail(ErrorCode::IoError, "grid file truncated");
    const char* first = line.data();
    const char* last = line.data() + line.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == '\r' || last[-1] == ' ')) --last;
    auto [ptr, ec] = std::from_chars(first, last, values[k]);
    if (ec != std::errc{} || ptr != last)
      fail(ErrorCode::IoError, "bad value on line " + std::to_string(k + 2) + ": " + line);
  }
  return values;
}

}  // namespace

void write_function(std::ostream& os, const RadialFunction& u) {
  os << "radial " << u.grid.dimension() << ' ' << u.grid.cells() << '\n';
  write_values(os, u.values);
}

void write_function(std::ostream& os, const DiskFunction& u) {
  os << "disk 2 " << u.grid.radial_cells() << ' ' << u.grid.angular_cells() << '\n';
  write_values(os, u.values);
}

std::variant<RadialFunction, DiskFunction> read_function(std::istream& is) {
  std::string header;
  // Leading '#' lines carry provenance and are skipped.
  do {
    if (!std::getline(is, header)) fail(ErrorCode::IoError, "empty grid file");
  } while (header.empty() || header[0] == '#');
  std::istringstream hs(header);
  std::string kind;
  int N = 0;
  hs >> kind >> N;
  if (kind == "radial") {
    int m = 0;
    if (!(hs >> m)) fail(ErrorCode::IoError, "bad radial header: " + header);
    RadialGrid grid(N, m);
    return RadialFunction{grid, read_values(is, static_cast<std::size_t>(m))};
  }
  if (kind == "disk") {
    int mr = 0, mt = 0;
    if (!(hs >> mr >> mt) || N != 2) fail(ErrorCode::IoError, "bad disk header: " + header);
    DiskGrid grid(mr, mt);
    return DiskFunction{grid, read_values(is, static_cast<std::size_t>(mr) * mt)};
  }
  fail(ErrorCode::IoError, "unknown grid kind in header: " + header);
}

namespace {
template <class F>
void save_impl(const std::string& path, const F& u) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_function(os, u);
  if (!os) fail(ErrorCode::IoError, "write failed: " + path);
}
}  // namespace

void save_function(const std::string& path, const RadialFunction& u) { save_impl(path, u); }
void save_function(const std::string& path, const DiskFunction& u) { save_impl(path, u); }

std::variant<RadialFunction, DiskFunction> load_function(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IoError, "cannot open " + path);
  return read_function(is);
}

}  // namespace hsl
