#include "levitrap/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levitrap/constants.hpp"
#include "levitrap/error.hpp"

namespace levitrap::floquet {

using constants::hbar;

namespace {

const complex I{0.0, 1.0};

// Gaussian elimination with partial pivoting for a tridiagonal system (same
// scheme as LAPACK gtsv). `lower`/`upper` have n-1 entries; b is overwritten.
void solve_tridiagonal(std::vector<complex> lower, std::vector<complex> diag,
                       std::vector<complex> upper, std::vector<complex>& b) {
  const std::size_t n = diag.size();
  auto singular = [] {
    fail(ErrorCode::singular, "Floquet recursion matrix is numerically singular");
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(lower[i])) {
      if (diag[i] == complex{}) singular();
      const complex fact = lower[i] / diag[i];
      diag[i + 1] -= fact * upper[i];
      b[i + 1] -= fact * b[i];
      lower[i] = 0.0;
    } else {
      const complex fact = diag[i] / lower[i];
      diag[i] = lower[i];
      const complex temp = diag[i + 1];
      diag[i + 1] = upper[i] - fact * temp;
      if (i + 2 < n) {
        lower[i] = upper[i + 1];
        upper[i + 1] = -fact * lower[i];
      } else {
        lower[i] = 0.0;
      }
      upper[i] = temp;
      const complex tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  if (diag[n - 1] == complex{}) singular();
  b[n - 1] /= diag[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - upper[n - 2] * b[n - 1]) / diag[n - 2];
  for (std::size_t k = n < 2 ? 0 : n - 2; k-- > 0;) {
    b[k] = (b[k] - upper[k] * b[k + 1] - lower[k] * b[k + 2]) / diag[k];
  }
}

double relative_change(complex a, complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

double BichromaticDrive::ratio() const { return rabi_1 == 0.0 ? 0.0 : rabi_2 / rabi_1; }

BichromaticDrive BichromaticDrive::from_ratio(double rabi_1, double ratio, double detuning,
                                              double linewidth, double transverse_decay) {
  return {rabi_1, ratio * rabi_1, detuning, linewidth, transverse_decay};
}

void validate(const BichromaticDrive& drive) {
  if (!(drive.linewidth > 0.0) || !(drive.transverse_decay > 0.0)) {
    fail(ErrorCode::invalid_argument, "bichromatic drive needs Gamma, gamma > 0");
  }
  if (!(drive.rabi_1 >= 0.0) || !(drive.rabi_2 >= 0.0)) {
    fail(ErrorCode::invalid_argument, "Rabi frequencies must be >= 0");
  }
  if (!std::isfinite(drive.detuning)) {
    fail(ErrorCode::invalid_argument, "detuning must be finite");
  }
}

complex BlochFourierSolution::u_at(int n) const {
  return std::abs(n) <= cutoff + 1 ? u[n + cutoff + 1] : complex{};
}
complex BlochFourierSolution::v_at(int n) const {
  return std::abs(n) <= cutoff + 1 ? v[n + cutoff + 1] : complex{};
}
complex BlochFourierSolution::w_at(int n) const {
  return std::abs(n) <= cutoff ? w[n + cutoff] : complex{};
}

BlochFourierSolution solve_bloch_fourier(const BichromaticDrive& drive, int cutoff) {
  validate(drive);
  if (cutoff < 0) fail(ErrorCode::invalid_argument, "cutoff must be >= 0");

  const double G = drive.linewidth;
  const double g = drive.transverse_decay;
  const double d = drive.beat();
  const double o1 = drive.rabi_1;
  const double o2 = drive.rabi_2;
  const double osq = o1 * o1 + o2 * o2;
  const double cross = 2.0 * o1 * o2;

  const std::size_t size = 2 * static_cast<std::size_t>(cutoff) + 1;
  const std::size_t centre = static_cast<std::size_t>(cutoff);
  std::vector<complex> diag(size), lower(size - 1), upper(size - 1), rhs(size);
  complex coupling0;
  for (int n = -cutoff; n <= cutoff; ++n) {
    const std::size_t k = n + cutoff;
    const double nd = n * d;
    const complex denominator(4.0 * g * g + d * d * (1.0 - 4.0 * n * n), 8.0 * g * nd);
    const complex coupling = -4.0 * osq * complex(g, nd) / denominator;
    diag[k] = complex(-G, -nd) + coupling;
    if (n == 0) coupling0 = coupling;
    if (n < cutoff) upper[k] = -cross / complex(2.0 * g, d * (2.0 * n + 1.0));
    if (n > -cutoff) lower[k - 1] = -cross / complex(2.0 * g, d * (2.0 * n - 1.0));
  }
  // Solve for q_n = w_n + delta_n0 so that weak-drive populations keep full precision:
  // A q = G e_0 + A e_0.
  rhs[centre] = coupling0;
  if (centre + 1 < size) rhs[centre + 1] = lower[centre];
  if (centre > 0) rhs[centre - 1] = upper[centre - 1];

  BlochFourierSolution sol;
  sol.drive = drive;
  sol.cutoff = cutoff;
  std::vector<complex> q = rhs;
  solve_tridiagonal(lower, diag, upper, q);

  double res2 = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    complex row = diag[k] * q[k] - rhs[k];
    if (k + 1 < size) row += upper[k] * q[k + 1];
    if (k > 0) row += lower[k - 1] * q[k - 1];
    res2 += std::norm(row);
  }
  sol.residual = std::sqrt(res2) / G;
  if (!(sol.residual <= 1e-8)) {
    fail(ErrorCode::singular,
         "Floquet system ill-conditioned, residual " + std::to_string(sol.residual));
  }
  sol.population = 0.5 * q[centre].real();
  sol.w = q;
  sol.w[centre] -= 1.0;

  // Coherences one order beyond the population cutoff follow from the retained w_n.
  sol.u.resize(size + 2);
  sol.v.resize(size + 2);
  for (int n = -cutoff - 1; n <= cutoff + 1; ++n) {
    const std::size_t k = n + cutoff + 1;
    sol.u[k] = I * (o1 * sol.w_at(n) + o2 * sol.w_at(n + 1)) /
               (2.0 * complex(g, d * (n + 0.5)));
    sol.v[k] = -I * (o1 * sol.w_at(n) + o2 * sol.w_at(n - 1)) /
               (2.0 * complex(g, d * (n - 0.5)));
  }
  return sol;
}

BlochFourierSolution converge_cutoff(const BichromaticDrive& drive, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_argument, "cutoff tolerance must be > 0");
  BlochFourierSolution previous = solve_bloch_fourier(drive, 0);
  int cutoff = 1;
  while (cutoff <= max_cutoff) {
    BlochFourierSolution next = solve_bloch_fourier(drive, cutoff);
    const double change = std::max(
        {relative_change(previous.u_at(0) + previous.v_at(0), next.u_at(0) + next.v_at(0)),
         relative_change(previous.v_at(1) + previous.u_at(-1), next.v_at(1) + next.u_at(-1)),
         relative_change(excited_population(previous), excited_population(next))});
    if (change < tol) {
      previous.converged = true;
      return previous;
    }
    previous = std::move(next);
    cutoff *= 2;
  }
  fail(ErrorCode::convergence, "Floquet cutoff did not converge up to N = " +
                                   std::to_string(max_cutoff));
}

complex time_averaged_force_complex(const BlochFourierSolution& s, double grad_rabi_1,
                                    double grad_rabi_2) {
  return -0.5 * hbar *
         (grad_rabi_1 * (s.v_at(0) + s.u_at(0)) + grad_rabi_2 * (s.v_at(1) + s.u_at(-1)));
}

double time_averaged_force(const BlochFourierSolution& s, double grad_rabi_1,
                           double grad_rabi_2) {
  return time_averaged_force_complex(s, grad_rabi_1, grad_rabi_2).real();
}

double excited_population(const BlochFourierSolution& s) { return s.population; }

double excited_population_from_coherences(const BlochFourierSolution& s) {
  const auto& d = s.drive;
  const complex sum =
      d.rabi_1 * (s.u_at(0) - s.v_at(0)) + d.rabi_2 * (s.u_at(-1) - s.v_at(1));
  return (I / (2.0 * d.linewidth) * sum).real();
}

double lowest_order_force(double s1, double s2, double g1, double g2, double detuning,
                          double linewidth, double transverse_decay) {
  return hbar * detuning * linewidth / (2.0 * transverse_decay) * (s1 * g1 - s2 * g2) /
         (1.0 + s1 + s2);
}

double lowest_order_population(double s1, double s2) {
  return 0.5 * (s1 + s2) / (1.0 + s1 + s2);
}

double mode_saturation(const ModeDrive& mode, double linewidth, double transverse_decay) {
  const double x = mode.detuning / transverse_decay;
  return mode.rabi * mode.rabi / (transverse_decay * linewidth * (1.0 + x * x));
}

double multimode_force(std::span<const ModeDrive> modes, double linewidth,
                       double transverse_decay) {
  double total_s = 0.0;
  double numerator = 0.0;
  for (const auto& m : modes) {
    const double s = mode_saturation(m, linewidth, transverse_decay);
    total_s += s;
    numerator += -m.detuning * s * m.log_gradient;
  }
  return hbar * linewidth / (2.0 * transverse_decay) * numerator / (1.0 + total_s);
}

double multimode_population(std::span<const ModeDrive> modes, double linewidth,
                            double transverse_decay) {
  double total_s = 0.0;
  for (const auto& m : modes) total_s += mode_saturation(m, linewidth, transverse_decay);
  return 0.5 * total_s / (1.0 + total_s);
}

double independent_modes_force(std::span<const ModeDrive> modes, double linewidth,
                               double transverse_decay) {
  double total = 0.0;
  for (const auto& m : modes) {
    const double s = mode_saturation(m, linewidth, transverse_decay);
    total += -m.detuning * s * m.log_gradient / (1.0 + s);
  }
  return hbar * linewidth / (2.0 * transverse_decay) * total;
}

}  // namespace levitrap::floquet
