#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace hsl {

/// Surface area of the unit sphere S^{N-1} in R^N.
double unit_sphere_area(int N);

/// Cell-centered uniform grid on [0,1] for radial functions in R^N. Nodes
/// r_i = (i + 1/2)/m never touch the origin, so singular weights |x|^a with
/// a > -N are evaluated only through exact per-cell integrals.
class RadialGrid {
 public:
  RadialGrid(int N, int m);

  int dimension() const { return N_; }
  int cells() const { return m_; }
  double spacing() const { return h_; }
  double node(int i) const { return (i + 0.5) * h_; }
  double face(int k) const { return k * h_; }
  double surface_const() const { return omega_; }

  /// omega * integral of r^{a+N-1} over cell i, i.e. the exact integral of
  /// |x|^a over the spherical shell belonging to the cell.
  std::vector<double> cell_weights(double a) const;

  bool operator==(const RadialGrid&) const = default;

 private:
  int N_;
  int m_;
  double h_;
  double omega_;
};

/// Polar grid on the unit disk: m_r cell-centered radii times m_t uniform
/// angles theta_j = 2 pi j / m_t. Values are stored radius-major.
class DiskGrid {
 public:
  DiskGrid(int m_r, int m_t);

  int radial_cells() const { return m_r_; }
  int angular_cells() const { return m_t_; }
  int size() const { return m_r_ * m_t_; }
  double spacing() const { return h_; }
  double angle_step() const { return dtheta_; }
  double node(int i) const { return (i + 0.5) * h_; }
  double angle(int j) const { return j * dtheta_; }
  int index(int i, int j) const { return i * m_t_ + j; }

  /// dtheta * integral of r^{a+1} over radial cell i.
  std::vector<double> cell_weights(double a) const;
  RadialGrid radial() const { return RadialGrid(2, m_r_); }

  bool operator==(const DiskGrid&) const = default;

 private:
  int m_r_;
  int m_t_;
  double h_;
  double dtheta_;
};

struct RadialFunction {
  RadialGrid grid;
  std::vector<double> values;

  static RadialFunction sample(const RadialGrid& grid, const std::function<double(double)>& f);
  static RadialFunction zeros(const RadialGrid& grid);
};

struct DiskFunction {
  DiskGrid grid;
  std::vector<double> values;

  static DiskFunction sample(const DiskGrid& grid,
                             const std::function<double(double r, double theta)>& f);
  static DiskFunction zeros(const DiskGrid& grid);
  /// theta-independent extension of a 2D radial function.
  static DiskFunction from_radial(const RadialFunction& u, int m_t);
  double at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// Symmetric positive definite tridiagonal matrix.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1

  std::vector<double> apply(std::span<const double> x) const;
  /// Thomas algorithm; the matrix must be nonsingular without pivoting.
  std::vector<double> solve(std::span<const double> b) const;
  double quadratic_form(std::span<const double> x) const;
};

/// Stiffness matrix K of the discrete radial Dirichlet energy, E(u) = u^T K u.
/// Interior faces carry omega r_{k+1/2}^{N-1}/h; the boundary face uses the
/// ghost value u_m = -u_{m-1} over the half cell [r_{m-1}, 1].
Tridiagonal radial_stiffness(const RadialGrid& grid);

/// Cell measures omega * integral of r^{N-1} over each cell.
std::vector<double> radial_cell_measures(const RadialGrid& grid);

double weighted_integral(const RadialFunction& f, double a);
double weighted_integral(const DiskFunction& f, double a);

double radial_dirichlet_energy(const RadialFunction& u);

/// Second-order finite-volume Laplacian u'' + (N-1)u'/r with u(1) = 0 and
/// even symmetry at the origin. Equals -K u / cell measure, so discrete
/// integration by parts against the energy is exact.
RadialFunction radial_laplacian(const RadialFunction& u);

/// K_disk u for the stiffness of disk_dirichlet_energy (energy = u^T K u).
std::vector<double> disk_stiffness_apply(const DiskGrid& grid, std::span<const double> u);

double disk_dirichlet_energy(const DiskFunction& u);
/// Euclidean gradient of disk_dirichlet_energy.
std::vector<double> disk_energy_gradient(const DiskFunction& u);
DiskFunction disk_laplacian(const DiskFunction& u);

/// Fast solver for the disk stiffness system K w = b: real Fourier transform
/// in theta, one tridiagonal solve per mode.
class DiskPoissonSolver {
 public:
  explicit DiskPoissonSolver(const DiskGrid& grid);
  std::vector<double> solve(std::span<const double> b) const;
  const DiskGrid& grid() const { return grid_; }

 private:
  DiskGrid grid_;
  Eigen::MatrixXd basis_;  // m_t x m_t orthonormal real Fourier basis
  std::vector<Tridiagonal> modes_;
};

struct RadialLemmaReport {
  double max_violation;  ///< max_i |u_i| - bound_i; <= 0 means the bound holds
  int worst_node;
  double gradient_norm;
};

/// Pointwise decay bound for radial H^1_0 functions, N >= 3.
RadialLemmaReport radial_lemma_check(const RadialFunction& u);

// Text format: a header line "radial N m" or "disk 2 m_r m_t", then one
// value per line in shortest round-trip decimal form. Readers skip leading
// lines starting with '#'.
void write_function(std::ostream& os, const RadialFunction& u);
void write_function(std::ostream& os, const DiskFunction& u);
std::variant<RadialFunction, DiskFunction> read_function(std::istream& is);

void save_function(const std::string& path, const RadialFunction& u);
void save_function(const std::string& path, const DiskFunction& u);
std::variant<RadialFunction, DiskFunction> load_function(const std::string& path);

}  // namespace hsl
