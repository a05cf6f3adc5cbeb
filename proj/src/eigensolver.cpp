#include "shapeq/eigensolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "shapeq/format.hpp"

namespace shapeq {

namespace {

constexpr std::size_t kLanes = 8;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxRounds = 20000;

std::string describe_grid(const Grid& grid) {
  return "uniform n_interior=" + std::to_string(grid.n_interior) +
         " dx_nm=" + format_number(grid.spacing());
}

// One pass of the counting recursion for up to kLanes shifts at once.
//   s_i = c_i - sigma + a_i s_{i-1} / q_{i-1},   q_i = b_i + s_i
// with a_i = |e_{i-1}|, b_i = |e_i|; q_i are the LDL^T pivots of T - sigma.
// The lanes are independent chains, which hides the division latency.
//
// With kSlope the pass also returns d/dsigma ln|det(T - sigma)| = sum q_i'/q_i,
// using s_i' = -1 + (a_i / q_{i-1})^2 s_{i-1}' (all terms of one sign).
template <bool kSlope>
void count_lanes(const double* c, const double* e, std::size_t n, double pivmin,
                 const double* sigma, std::size_t lanes, std::size_t* out, double* slope_out) {
  std::array<double, kLanes> shift{};
  std::array<double, kLanes> s{};
  std::array<double, kLanes> r{};  // 1 / q_{i-1}
  std::array<double, kLanes> ds{};
  std::array<double, kLanes> slope{};
  std::array<std::size_t, kLanes> negatives{};
  std::array<bool, kLanes> perturbed{};
  for (std::size_t lane = 0; lane < kLanes; ++lane) {
    shift[lane] = lane < lanes ? sigma[lane] : sigma[0];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i > 0 ? e[i - 1] : 0.0;
    const double b = i + 1 < n ? e[i] : 0.0;
    for (std::size_t lane = 0; lane < kLanes; ++lane) {
      const double ar = a * r[lane];
      const double si = (c[i] - shift[lane]) + ar * s[lane];
      const double qi = b + si;
      const bool tiny = std::abs(qi) < pivmin;
      const double q = tiny ? -pivmin : qi;
      s[lane] = tiny ? -pivmin - b : si;
      r[lane] = 1.0 / q;
      negatives[lane] += q < 0.0 ? 1 : 0;
      if constexpr (kSlope) {
        ds[lane] = -1.0 + ar * ar * ds[lane];
        slope[lane] += ds[lane] * r[lane];
        perturbed[lane] = perturbed[lane] || tiny;
      }
    }
  }
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    out[lane] = negatives[lane];
    if constexpr (kSlope) {
      slope_out[lane] = perturbed[lane] ? std::numeric_limits<double>::quiet_NaN() : slope[lane];
    }
  }
}

// Brackets for the k lowest eigenvalues: lambda_m lies in [lo[m], hi[m]], with
// the Sturm counts observed at both ends. Every count narrows all of them.
struct Brackets {
  std::vector<double> lo, hi;
  std::vector<std::size_t> lo_count, hi_count;

  Brackets(std::size_t k, double lower, double upper, std::size_t n)
      : lo(k, lower), hi(k, upper), lo_count(k, 0), hi_count(k, n) {}

  void apply(double sigma, std::size_t count) {
    for (std::size_t m = 0; m < lo.size(); ++m) {
      if (count >= m + 1) {
        if (sigma < hi[m]) {
          hi[m] = sigma;
          hi_count[m] = count;
        }
      } else if (sigma > lo[m]) {
        lo[m] = sigma;
        lo_count[m] = count;
      }
    }
  }

  bool done(std::size_t m) const {
    const double tol = std::max(2.0 * kEps * std::max(std::abs(lo[m]), std::abs(hi[m])), 1e-300);
    if (hi[m] - lo[m] <= tol) return true;
    const double mid = lo[m] + 0.5 * (hi[m] - lo[m]);
    return mid <= lo[m] || mid >= hi[m];
  }

  // Exactly one eigenvalue in the bracket.
  bool isolated(std::size_t m) const { return lo_count[m] == m && hi_count[m] == m + 1; }

  bool same(std::size_t a, std::size_t b) const { return lo[a] == lo[b] && hi[a] == hi[b]; }
};

double max_relative_change(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(b[i]), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace

Grid make_grid(double length, std::size_t n_interior) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be positive");
  if (n_interior < kMinGridPoints) {
    throw DomainError("grid needs at least " + std::to_string(kMinGridPoints) + " interior points");
  }
  return Grid{n_interior, length};
}

// ---------------------------------------------------------------------------
// TridiagonalOperator

TridiagonalOperator::TridiagonalOperator(std::vector<double> diagonal,
                                         std::vector<double> off_diagonal)
    : diagonal_(std::move(diagonal)), off_diagonal_(std::move(off_diagonal)) {
  if (diagonal_.empty()) throw DomainError("operator must have at least one row");
  if (off_diagonal_.size() + 1 != diagonal_.size()) {
    throw DomainError("off-diagonal must have exactly size() - 1 entries");
  }
  const std::size_t n = diagonal_.size();
  excess_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(off_diagonal_[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(off_diagonal_[i]) : 0.0;
    excess_[i] = diagonal_[i] - left - right;
  }
  finish();
}

TridiagonalOperator TridiagonalOperator::from_excess(std::vector<double> excess,
                                                     std::vector<double> off_diagonal) {
  if (excess.empty()) throw DomainError("operator must have at least one row");
  if (off_diagonal.size() + 1 != excess.size()) {
    throw DomainError("off-diagonal must have exactly size() - 1 entries");
  }
  TridiagonalOperator op;
  const std::size_t n = excess.size();
  op.diagonal_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(off_diagonal[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(off_diagonal[i]) : 0.0;
    op.diagonal_[i] = excess[i] + left + right;
  }
  op.excess_ = std::move(excess);
  op.off_diagonal_ = std::move(off_diagonal);
  op.finish();
  return op;
}

void TridiagonalOperator::finish() {
  coupling_.resize(off_diagonal_.size());
  double max_sq = 1.0;
  for (std::size_t i = 0; i < off_diagonal_.size(); ++i) {
    if (!std::isfinite(off_diagonal_[i])) throw DomainError("non-finite off-diagonal entry");
    coupling_[i] = std::abs(off_diagonal_[i]);
    max_sq = std::max(max_sq, coupling_[i] * coupling_[i]);
  }
  for (const double d : excess_) {
    if (!std::isfinite(d)) throw DomainError("non-finite diagonal entry");
  }
  pivmin_ = std::numeric_limits<double>::min() * max_sq;
}

std::size_t TridiagonalOperator::count_below(double sigma) const {
  std::size_t count = 0;
  count_lanes<false>(excess_.data(), coupling_.data(), excess_.size(), pivmin_, &sigma, 1, &count,
                     nullptr);
  return count;
}

void TridiagonalOperator::count_below(std::span<const double> sigmas,
                                      std::span<std::size_t> counts) const {
  if (counts.size() < sigmas.size()) throw DomainError("counts buffer too small");
  for (std::size_t start = 0; start < sigmas.size(); start += kLanes) {
    const std::size_t lanes = std::min(kLanes, sigmas.size() - start);
    count_lanes<false>(excess_.data(), coupling_.data(), excess_.size(), pivmin_,
                       sigmas.data() + start, lanes, counts.data() + start, nullptr);
  }
}

void TridiagonalOperator::probe(std::span<const double> sigmas, std::span<std::size_t> counts,
                                std::span<double> slopes) const {
  if (counts.size() < sigmas.size() || slopes.size() < sigmas.size()) {
    throw DomainError("probe buffers too small");
  }
  for (std::size_t start = 0; start < sigmas.size(); start += kLanes) {
    const std::size_t lanes = std::min(kLanes, sigmas.size() - start);
    count_lanes<true>(excess_.data(), coupling_.data(), excess_.size(), pivmin_,
                      sigmas.data() + start, lanes, counts.data() + start, slopes.data() + start);
  }
}

double TridiagonalOperator::lower_bound() const {
  return *std::min_element(excess_.begin(), excess_.end());
}

double TridiagonalOperator::upper_bound() const {
  double upper = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diagonal_.size(); ++i) {
    const double left = i > 0 ? coupling_[i - 1] : 0.0;
    const double right = i + 1 < diagonal_.size() ? coupling_[i] : 0.0;
    upper = std::max(upper, diagonal_[i] + left + right);
  }
  return upper;
}

// ---------------------------------------------------------------------------
// Discretization and bisection

TridiagonalOperator discretize(const PotentialSpec& spec, const Grid& grid) {
  require_valid(spec);
  if (is_split_domain(spec)) {
    throw DomainError("the infinite partition is solved by domain splitting, not discretized");
  }
  const double L = domain_length(spec);
  if (std::abs(grid.length - L) > 1e-12 * L) throw DomainError("grid length differs from domain");
  make_grid(grid.length, grid.n_interior);

  const std::size_t n = grid.n_interior;
  const double dx = grid.spacing();
  const double t = kinetic_coefficient(spec.mass_ratio) / (dx * dx);

  std::vector<double> excess(n);
  for (std::size_t i = 0; i < n; ++i) {
    excess[i] = detail::evaluate_unchecked(spec, grid.point(i));
  }
  excess.front() += t;
  excess.back() += t;
  return TridiagonalOperator::from_excess(std::move(excess), std::vector<double>(n - 1, -t));
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k,
                                       std::span<const double> hints) {
  if (k < 1 || k > op.size()) {
    throw DomainError("requested " + std::to_string(k) + " eigenvalues of a " +
                      std::to_string(op.size()) + "-dimensional operator");
  }
  const double lower = op.lower_bound();
  const double upper = op.upper_bound();
  const double margin = 4.0 * kEps * std::max(std::abs(lower), std::abs(upper)) + 1e-300;
  Brackets br(k, lower - margin, upper + margin, op.size());

  std::vector<double> sigmas;
  std::vector<std::size_t> counts;
  std::vector<double> slopes;
  const auto run = [&]() {
    counts.resize(sigmas.size());
    slopes.resize(sigmas.size());
    op.probe(sigmas, counts, slopes);
    for (std::size_t j = 0; j < sigmas.size(); ++j) br.apply(sigmas[j], counts[j]);
  };

  if (!hints.empty()) {
    for (std::size_t j = 0; j < std::min(k, hints.size()); ++j) {
      const double g = hints[j];
      if (!std::isfinite(g)) continue;
      const double delta = 1e-3 * std::abs(g) + 1e-300;
      sigmas.push_back(g - delta);
      sigmas.push_back(g + delta);
    }
    run();
  }

  // Newton iterate per level, used once the level is isolated; the Sturm
  // counts at each iterate keep the bracket honest.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> newton(k, nan);
  std::vector<std::size_t> owner;
  for (std::size_t round = 0;; ++round) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < k && open.size() < kLanes; ++j) {
      if (br.done(j)) continue;
      if (!open.empty() && br.same(open.back(), j)) continue;
      open.push_back(j);
    }
    if (open.empty()) break;
    if (round >= kMaxRounds) {
      const std::size_t j = open.front();
      std::ostringstream msg;
      msg << "bisection did not converge for eigenvalue index " << j << ": bracket ["
          << format_number(br.lo[j]) << ", " << format_number(br.hi[j]) << "] after " << round
          << " rounds";
      throw SolverError(msg.str());
    }

    sigmas.clear();
    owner.clear();
    std::size_t bisecting = 0;
    for (const std::size_t j : open) {
      const double x = newton[j];
      if (br.isolated(j) && x > br.lo[j] && x < br.hi[j]) {
        sigmas.push_back(x);
        owner.push_back(j);
      } else {
        ++bisecting;
      }
    }
    // Spare lanes go to multisection of the brackets Newton cannot handle yet.
    const std::size_t spare = kLanes - std::min(kLanes, sigmas.size());
    const std::size_t per = bisecting == 0 ? 0 : std::max<std::size_t>(1, spare / bisecting);
    for (const std::size_t j : open) {
      const double x = newton[j];
      if (br.isolated(j) && x > br.lo[j] && x < br.hi[j]) continue;
      const double width = br.hi[j] - br.lo[j];
      for (std::size_t p = 0; p < per; ++p) {
        const double sigma =
            br.lo[j] + width * static_cast<double>(p + 1) / static_cast<double>(per + 1);
        if (sigma > br.lo[j] && sigma < br.hi[j]) {
          sigmas.push_back(sigma);
          owner.push_back(j);
        }
      }
    }
    run();

    for (const std::size_t j : open) newton[j] = nan;
    for (std::size_t p = 0; p < sigmas.size(); ++p) {
      const std::size_t j = owner[p];
      if (!br.isolated(j) || !std::isfinite(slopes[p]) || slopes[p] == 0.0) continue;
      const double step = -1.0 / slopes[p];
      double next = sigmas[p] + step;
      // Once the step reaches rounding level, probe just past the iterate on
      // the far side so the bracket can close around it.
      const double floor = 2.0 * kEps * std::abs(sigmas[p]);
      if (std::abs(step) <= floor) {
        next = step > 0.0 ? std::max(sigmas[p] + floor, br.lo[j]) : std::min(sigmas[p] - floor, br.hi[j]);
        if (next == sigmas[p]) continue;
      }
      if (next > br.lo[j] && next < br.hi[j] &&
          (std::isnan(newton[j]) || std::abs(next - sigmas[p]) < std::abs(newton[j] - sigmas[p]))) {
        newton[j] = next;
      }
    }
  }

  std::vector<double> levels(k);
  for (std::size_t j = 0; j < k; ++j) levels[j] = br.lo[j] + 0.5 * (br.hi[j] - br.lo[j]);
  return levels;
}

Spectrum lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k,
                            const std::string& grid_description) {
  Spectrum out;
  out.levels = lowest_eigenvalues(op, k);
  out.grid_used = grid_description;
  out.n_interior = op.size();
  out.converged = true;
  return out;
}

// ---------------------------------------------------------------------------
// Analytic spectra

Spectrum analytic_box_spectrum(double L, double mass_ratio, std::size_t k) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive");
  if (k < 1) throw DomainError("k must be at least 1");
  const double scale = kinetic_coefficient(mass_ratio) * std::numbers::pi * std::numbers::pi / (L * L);
  Spectrum out;
  out.levels.resize(k);
  for (std::size_t n = 1; n <= k; ++n) {
    const double nn = static_cast<double>(n);
    out.levels[n - 1] = scale * nn * nn;
  }
  out.converged = true;
  out.grid_used = "analytic box L_nm=" + format_number(L);
  return out;
}

Spectrum analytic_harmonic_spectrum(double L_osc, double mass_ratio, std::size_t k) {
  if (!(L_osc > 0.0) || !std::isfinite(L_osc)) throw DomainError("L_osc must be positive");
  if (k < 1) throw DomainError("k must be at least 1");
  const double quantum = 2.0 * kinetic_coefficient(mass_ratio) / (L_osc * L_osc);
  Spectrum out;
  out.levels.resize(k);
  for (std::size_t n = 0; n < k; ++n) out.levels[n] = quantum * (static_cast<double>(n) + 0.5);
  out.converged = true;
  out.grid_used = "analytic harmonic L_osc_nm=" + format_number(L_osc);
  return out;
}

// ---------------------------------------------------------------------------
// Grid solves

Spectrum solve_on_grid(const PotentialSpec& spec, std::size_t k, std::size_t n_interior,
                       std::span<const double> hints) {
  const Grid grid = make_grid(domain_length(spec), n_interior);
  const TridiagonalOperator op = discretize(spec, grid);
  Spectrum out;
  out.levels = lowest_eigenvalues(op, k, hints);
  out.converged = false;  // a single grid says nothing about convergence
  out.grid_used = describe_grid(grid);
  out.spec_hash = spec_hash(spec);
  out.n_interior = n_interior;
  return out;
}

Spectrum convergence_refine(const PotentialSpec& spec, std::size_t k, double rel_tol,
                            const SolverOptions& options) {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  require_valid(spec);
  if (is_split_domain(spec)) return solve_split(spec, k, options);

  std::size_t n = std::max(options.n_interior, kMinGridPoints);
  if (k > n) throw DomainError("more levels requested than grid unknowns");
  Spectrum previous = solve_on_grid(spec, k, n);
  while (true) {
    const std::size_t next = 2 * n + 1;  // halves dx exactly
    if (next > options.max_points) {
      previous.converged = false;
      return previous;
    }
    Spectrum current = solve_on_grid(spec, k, next, previous.levels);
    if (max_relative_change(current.levels, previous.levels) < rel_tol) {
      current.converged = true;
      return current;
    }
    previous = std::move(current);
    n = next;
  }
}

Spectrum solve_split(const PotentialSpec& spec, std::size_t k, const SolverOptions& options) {
  require_valid(spec);
  const auto* split = std::get_if<InfiniteWellInfinitePartition>(&spec.geometry);
  if (split == nullptr) throw DomainError("solve_split needs an infinite_partition potential");
  if (k < 1) throw DomainError("k must be at least 1");

  const double left_length = split->l;
  const double right_length = split->L - split->l;
  Spectrum left;
  Spectrum right;
  if (options.split == SplitMethod::Analytic) {
    left = analytic_box_spectrum(left_length, spec.mass_ratio, k);
    right = analytic_box_spectrum(right_length, spec.mass_ratio, k);
  } else {
    const PotentialSpec left_spec{InfiniteWell{left_length}, spec.mass_ratio};
    const PotentialSpec right_spec{InfiniteWell{right_length}, spec.mass_ratio};
    left = convergence_refine(left_spec, k, options.rel_tol, options);
    right = convergence_refine(right_spec, k, options.rel_tol, options);
  }

  Spectrum out;
  out.levels.resize(2 * k);
  std::merge(left.levels.begin(), left.levels.end(), right.levels.begin(), right.levels.end(),
             out.levels.begin());
  out.levels.resize(k);
  out.converged = left.converged && right.converged;
  out.grid_used = "split [" + left.grid_used + "] + [" + right.grid_used + "]";
  out.spec_hash = spec_hash(spec);
  out.n_interior = std::max(left.n_interior, right.n_interior);
  return out;
}

Spectrum solve(const PotentialSpec& spec, std::size_t k, const SolverOptions& options) {
  if (is_split_domain(spec)) return solve_split(spec, k, options);
  return convergence_refine(spec, k, options.rel_tol, options);
}

std::size_t split_counting_function(double L, double l, double mass_ratio, double energy) {
  if (!(energy >= 0.0)) throw DomainError("energy must be non-negative");
  if (!(l > 0.0 && l < L)) throw DomainError("l must lie strictly inside (0, L)");
  const double wavenumber = std::sqrt(energy / kinetic_coefficient(mass_ratio));
  const auto count = [&](double length) {
    return static_cast<std::size_t>(std::floor(length * wavenumber / std::numbers::pi));
  };
  return count(l) + count(L - l);
}

// ---------------------------------------------------------------------------
// Inverse iteration

std::vector<double> eigenvector(const TridiagonalOperator& op, double eigenvalue) {
  const std::size_t n = op.size();
  const auto& d = op.diagonal();
  const auto& e = op.off_diagonal();
  const double scale = std::max(std::abs(op.lower_bound()), std::abs(op.upper_bound()));
  // Nudge off the eigenvalue so the factorization stays finite.
  const double shift = eigenvalue + 8.0 * kEps * std::max(scale, std::abs(eigenvalue));

  // LU with partial pivoting of (T - shift): U has diagonal u0, two
  // super-diagonals u1, u2; multipliers in mult, row swaps in swapped.
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) u0[i] = d[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = e[i];
  std::vector<double> lower(e.begin(), e.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(u0[i]) >= std::abs(lower[i])) {
      if (u0[i] == 0.0) u0[i] = kEps * scale;
      mult[i] = lower[i] / u0[i];
      u0[i + 1] -= mult[i] * u1[i];
    } else {
      swapped[i] = 1;
      mult[i] = u0[i] / lower[i];
      u0[i] = lower[i];
      const double tmp = u1[i];
      u1[i] = u0[i + 1];
      u0[i + 1] = tmp - mult[i] * u0[i + 1];
      if (i + 2 < n) {
        u2[i] = u1[i + 1];
        u1[i + 1] = -mult[i] * u1[i + 1];
      }
    }
  }
  if (u0[n - 1] == 0.0) u0[n - 1] = kEps * scale;

  std::vector<double> v(n, 1.0);
  for (int iteration = 0; iteration < 3; ++iteration) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        std::swap(v[i], v[i + 1]);
      }
      v[i + 1] -= mult[i] * v[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double acc = v[ii];
      if (ii + 1 < n) acc -= u1[ii] * v[ii + 1];
      if (ii + 2 < n) acc -= u2[ii] * v[ii + 2];
      v[ii] = acc / u0[ii];
    }
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  // Fix the sign: first significant component positive.
  for (const double x : v) {
    if (std::abs(x) > 1e-8) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
  return v;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
  os << "n,energy_eV\n";
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    os << (i + 1) << ',' << format_number(spectrum.levels[i]) << '\n';
  }
}

}  // namespace shapeq
