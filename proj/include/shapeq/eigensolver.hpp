// Bound states of the 1D Schrodinger equation on a hard-walled domain.
//
// The Hamiltonian is discretized with second-order central differences on a
// uniform grid, giving a symmetric tridiagonal matrix whose lowest eigenvalues
// are found by Sturm-sequence bisection. The counting recursion is written in
// terms of the diagonal-dominance excess c_i = d_i - |e_{i-1}| - |e_i|, which
// for a discretized Laplacian is just the potential V(x_i) (plus t at the two
// ends). This keeps the small eigenvalues accurate even when the hopping t is
// twelve orders of magnitude larger than them.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "shapeq/potentials.hpp"

namespace shapeq {

/// Uniform grid on [0, length] with Dirichlet endpoints excluded.
struct Grid {
  std::size_t n_interior = 4096;
  double length = 100.0;

  double spacing() const { return length / static_cast<double>(n_interior + 1); }
  /// Position of unknown i (0-based), x = (i + 1) dx.
  double point(std::size_t i) const { return static_cast<double>(i + 1) * spacing(); }
};

inline constexpr std::size_t kMinGridPoints = 1;

Grid make_grid(double length, std::size_t n_interior);

class TridiagonalOperator {
 public:
  /// General symmetric tridiagonal matrix; off_diagonal has size() - 1 entries.
  TridiagonalOperator(std::vector<double> diagonal, std::vector<double> off_diagonal);

  /// Builds the matrix from its dominance excess, which is kept exactly.
  static TridiagonalOperator from_excess(std::vector<double> excess,
                                         std::vector<double> off_diagonal);

  std::size_t size() const { return diagonal_.size(); }
  const std::vector<double>& diagonal() const { return diagonal_; }
  const std::vector<double>& off_diagonal() const { return off_diagonal_; }
  const std::vector<double>& excess() const { return excess_; }

  /// Number of eigenvalues strictly below sigma.
  std::size_t count_below(double sigma) const;
  /// Batched form: counts[j] = count_below(sigmas[j]).
  void count_below(std::span<const double> sigmas, std::span<std::size_t> counts) const;

  /// Counts plus the slope d/dsigma ln|det(T - sigma)| at each shift, which
  /// gives a Newton step towards the nearest eigenvalue. A slope is NaN when a
  /// pivot had to be perturbed away from zero.
  void probe(std::span<const double> sigmas, std::span<std::size_t> counts,
             std::span<double> slopes) const;
  /// Gershgorin enclosure of the spectrum.
  double lower_bound() const;
  double upper_bound() const;

 private:
  TridiagonalOperator() = default;
  void finish();

  std::vector<double> diagonal_;
  std::vector<double> off_diagonal_;
  std::vector<double> excess_;
  std::vector<double> coupling_;  // |off_diagonal|
  double pivmin_ = 0.0;
};

struct Spectrum {
  std::vector<double> levels;  ///< eV, ascending
  bool converged = false;
  std::string grid_used;
  std::string spec_hash;
  std::size_t n_interior = 0;  ///< finest grid used; 0 for analytic results

  std::size_t k() const { return levels.size(); }
};

enum class SplitMethod { Analytic, Numeric };

struct SolverOptions {
  std::size_t n_interior = 4096;
  double rel_tol = 1e-7;
  std::size_t max_points = std::size_t{1} << 20;
  double degeneracy_tol = 1e-12;  ///< eV
  SplitMethod split = SplitMethod::Analytic;
};

/// Finite-difference Hamiltonian: diagonal 2t + V(x_i), off-diagonal -t,
/// t = hbar^2 / (2 m dx^2).
TridiagonalOperator discretize(const PotentialSpec& spec, const Grid& grid);

/// The k smallest eigenvalues in ascending order. Optional hints (one per
/// level, e.g. from a coarser grid) only narrow the initial brackets; the
/// result does not depend on them beyond the final rounding.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k,
                                       std::span<const double> hints = {});

/// Spectrum of the operator wrapped with provenance.
Spectrum lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k,
                            const std::string& grid_description);

/// hbar^2 pi^2 n^2 / (2 m L^2), n = 1..k.
Spectrum analytic_box_spectrum(double L, double mass_ratio, std::size_t k);

/// (hbar^2 / (m L_osc^2)) (n + 1/2), n = 0..k-1.
Spectrum analytic_harmonic_spectrum(double L_osc, double mass_ratio, std::size_t k);

/// Lowest k levels on a single fixed grid (no refinement).
Spectrum solve_on_grid(const PotentialSpec& spec, std::size_t k, std::size_t n_interior,
                       std::span<const double> hints = {});

/// Doubles the grid (dx halves) until the largest relative change of the k
/// levels drops below rel_tol. Hitting max_points returns converged = false.
Spectrum convergence_refine(const PotentialSpec& spec, std::size_t k, double rel_tol,
                            const SolverOptions& options = {});

/// Infinite partition: merged spectra of two independent wells of lengths l
/// and L - l.
Spectrum solve_split(const PotentialSpec& spec, std::size_t k, const SolverOptions& options = {});

/// Dispatches to solve_split or convergence_refine.
Spectrum solve(const PotentialSpec& spec, std::size_t k, const SolverOptions& options = {});

/// Unit-norm eigenvector for an eigenvalue of op, by inverse iteration.
std::vector<double> eigenvector(const TridiagonalOperator& op, double eigenvalue);

/// Number of merged-split levels below E from the analytic counting function
/// floor(l k / pi) + floor((L - l) k / pi), k = sqrt(E / kinetic).
std::size_t split_counting_function(double L, double l, double mass_ratio, double energy);

/// CSV with header "n,energy_eV", n starting at 1.
void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);

}  // namespace shapeq
