#include "pondera/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "pondera/constants.hpp"
#include "pondera/errors.hpp"

namespace pondera {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream out;
  out << "invalid physical parameters:";
  for (const auto& p : problems) out << ' ' << p << ';';
  return out.str();
}

void require_positive(std::vector<std::string>& problems, const char* name,
                      double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << name << " must be positive and finite (got " << value << ")";
    problems.push_back(msg.str());
  }
}

void require_nonnegative(std::vector<std::string>& problems, const char* name,
                         double value) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream msg;
    msg << name << " must be non-negative and finite (got " << value << ")";
    problems.push_back(msg.str());
  }
}

// Real roots of x^3 + a x^2 + b x + c, each polished by Newton steps.
std::vector<double> real_cubic_roots(double a, double b, double c) {
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
  std::vector<double> roots;
  if (r * r < q * q * q) {
    const double theta = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
    const double scale = -2.0 * std::sqrt(q);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(scale * std::cos((theta + 2.0 * constants::pi * k) / 3.0) -
                      a / 3.0);
    }
  } else {
    const double big = -std::copysign(
        std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
    const double small = big != 0.0 ? q / big : 0.0;
    roots.push_back(big + small - a / 3.0);
  }
  for (double& x : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = ((x + a) * x + b) * x + c;
      const double df = (3.0 * x + 2.0 * a) * x + b;
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
  }
  return roots;
}

}  // namespace

InvalidParameters::InvalidParameters(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

PhysicalParams PhysicalParams::table_one() {
  PhysicalParams p;
  p.mode_count = 2;
  p.omega_m = 1e6;
  p.omega_0 = 1e15;
  p.mass = 1e-4;
  p.cavity_length = 1e-3;
  p.gamma_m = 1.0;
  p.gamma_c = 1e6;
  p.input_power = 13e-3;
  p.temperature = 0.0;
  p.detuning = 0.0;
  return p;
}

std::vector<std::string> PhysicalParams::problems() const {
  std::vector<std::string> out;
  if (mode_count < 1) out.push_back("mode_count must be at least 1");
  require_positive(out, "omega_m", omega_m);
  require_positive(out, "omega_0", omega_0);
  require_positive(out, "mass", mass);
  require_positive(out, "cavity_length", cavity_length);
  require_positive(out, "gamma_m", gamma_m);
  require_positive(out, "gamma_c", gamma_c);
  require_nonnegative(out, "input_power", input_power);
  require_nonnegative(out, "temperature", temperature);
  if (!std::isfinite(detuning)) out.push_back("detuning must be finite");
  return out;
}

void PhysicalParams::validate() const {
  auto found = problems();
  if (!found.empty()) throw InvalidParameters(std::move(found));
}

bool PhysicalParams::outside_adiabatic_regime() const {
  const double free_spectral_range = constants::speed_of_light / (2.0 * cavity_length);
  return omega_m > 0.01 * free_spectral_range;
}

double derive_coupling(const PhysicalParams& params) {
  params.validate();
  return params.omega_0 / params.cavity_length;
}

double input_amplitude_sq(const PhysicalParams& params) {
  params.validate();
  return params.input_power / (constants::hbar * params.omega_0);
}

SteadyState steady_state_from_detuning(const PhysicalParams& params) {
  SteadyState s;
  s.coupling = derive_coupling(params);
  s.alpha_in_sq = input_amplitude_sq(params);
  const double alpha_sq =
      s.alpha_in_sq / (params.gamma_c * (0.25 + params.detuning * params.detuning));
  s.alpha = std::sqrt(alpha_sq);
  s.x = 2.0 * constants::hbar * s.coupling * params.mode_count * alpha_sq /
        (params.mass * params.omega_m * params.omega_m);
  s.y = 0.0;
  return s;
}

namespace {

// Delta = d0 + b n with n the intracavity photon number.
struct CubicCoefficients {
  double d0;
  double b;
  double gamma_c;
  double alpha_in_sq;
  double displacement_per_photon;
};

CubicCoefficients cubic_coefficients(const PhysicalParams& params,
                                     double bare_detuning) {
  const double g = derive_coupling(params);
  CubicCoefficients k{};
  k.gamma_c = params.gamma_c;
  k.alpha_in_sq = input_amplitude_sq(params);
  k.displacement_per_photon = 2.0 * constants::hbar * g * params.mode_count /
                              (params.mass * params.omega_m * params.omega_m);
  k.d0 = bare_detuning / params.gamma_c;
  k.b = g * k.displacement_per_photon / params.gamma_c;
  return k;
}

}  // namespace

std::vector<BistableBranch> solve_bistability(const PhysicalParams& params,
                                              double bare_detuning) {
  const auto k = cubic_coefficients(params, bare_detuning);
  // (Delta - d0)(1/4 + Delta^2) = b alpha_in^2 / gamma_c, monic in Delta.
  const double beta = k.b * k.alpha_in_sq / k.gamma_c;
  const auto deltas = real_cubic_roots(-k.d0, 0.25, -(0.25 * k.d0 + beta));

  std::vector<BistableBranch> branches;
  for (double delta : deltas) {
    BistableBranch br;
    br.detuning = delta;
    br.alpha_sq = k.alpha_in_sq / (k.gamma_c * (0.25 + delta * delta));
    br.x = k.displacement_per_photon * br.alpha_sq;
    branches.push_back(br);
  }
  std::sort(branches.begin(), branches.end(),
            [](const auto& l, const auto& r) { return l.alpha_sq < r.alpha_sq; });
  return branches;
}

double bistability_residual(const PhysicalParams& params, double bare_detuning,
                            double alpha_sq) {
  const auto k = cubic_coefficients(params, bare_detuning);
  const double n = alpha_sq;
  // gamma_c n (1/4 + (d0 + b n)^2) - alpha_in^2, expanded in powers of n.
  const std::array<double, 4> monomials{
      k.gamma_c * k.b * k.b * n * n * n,
      2.0 * k.gamma_c * k.b * k.d0 * n * n,
      k.gamma_c * (0.25 + k.d0 * k.d0) * n,
      -k.alpha_in_sq,
  };
  double sum = 0.0;
  double scale = 0.0;
  for (double m : monomials) {
    sum += m;
    scale += std::abs(m);
  }
  if (scale == 0.0) return 0.0;
  return std::abs(sum) / scale;
}

std::complex<double> mirror_susceptibility(double omega,
                                           const PhysicalParams& params) {
  const std::complex<double> denom(
      params.omega_m * params.omega_m - omega * omega,
      2.0 * params.gamma_m * omega);
  return 1.0 / (params.mass * denom);
}

double thermal_noise_psd(double omega, const PhysicalParams& params) {
  using constants::boltzmann;
  using constants::hbar;
  using constants::pi;
  const double base = params.mass * params.gamma_m * hbar / pi;
  const double t = params.temperature;
  if (omega == 0.0) return 2.0 * params.mass * params.gamma_m * boltzmann * t / pi;
  if (t == 0.0) return omega > 0.0 ? 2.0 * base * omega : 0.0;
  // 1 + coth(x) = 2 / (1 - exp(-2x)), stable for both signs of x.
  const double x = hbar * omega / (2.0 * boltzmann * t);
  if (std::abs(x) < 1e-6) {
    // omega / x underflows long before the series stops being exact.
    return base * (2.0 * boltzmann * t / hbar + omega + omega * x / 3.0);
  }
  return base * omega * 2.0 / (-std::expm1(-2.0 * x));
}

double force_noise_correlation(double omega, const PhysicalParams& params) {
  return 2.0 * constants::pi * thermal_noise_psd(-omega, params);
}

}  // namespace pondera
