#include "shaping/transfer_function.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "shaping/error.hpp"

namespace shaping {

namespace {

using cd = std::complex<double>;

}  // namespace

RationalTransferFunction::RationalTransferFunction(std::span<const double> num,
                                                   std::span<const double> den) {
  if (num.empty() || den.empty())
    throw Error(ErrorKind::EmptyCoefficients, "numerator and denominator must be non-empty");
  num_ = poly::strip_trailing_zeros(num);
  den_ = poly::strip_trailing_zeros(den);
  if (num_.empty()) throw Error(ErrorKind::ZeroLeadingCoefficient, "numerator is identically zero");
  if (den_.empty())
    throw Error(ErrorKind::ZeroLeadingCoefficient, "denominator is identically zero");
  for (double c : num_)
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite numerator coefficient");
  for (double c : den_)
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "non-finite denominator coefficient");
  if (den_.size() <= num_.size())
    throw Error(ErrorKind::NotProper, "deg D = " + std::to_string(den_.size() - 1) +
                                          " must exceed deg M = " + std::to_string(num_.size() - 1));
}

std::complex<double> RationalTransferFunction::evaluate(std::complex<double> s) const {
  return poly::evaluate<cd>(num_, s) / poly::evaluate<cd>(den_, s);
}

double RationalTransferFunction::den_scale() const noexcept {
  double m = 0.0;
  for (double a : den_) m = std::max(m, std::abs(a));
  return m;
}

RationalTransferFunction validate(std::span<const double> num, std::span<const double> den) {
  return RationalTransferFunction(num, den);
}

poly::Coeffs PoleZeroForm::expand_numerator() const {
  auto c = poly::from_roots(zeros);
  for (double& v : c) v *= gain;
  return c;
}

poly::Coeffs PoleZeroForm::expand_denominator() const {
  std::vector<cd> roots;
  for (const auto& p : poles)
    for (int k = 0; k < p.multiplicity; ++k) roots.push_back(p.value);
  return poly::from_roots(roots);
}

namespace {

// Newton on the (multiplicity - 1)-th derivative, which has a simple root there.
cd polish_root(const poly::Coeffs& c, cd root, int multiplicity) {
  poly::Coeffs f = c;
  for (int k = 1; k < multiplicity; ++k) f = poly::derivative(f);
  const auto df = poly::derivative(f);
  cd best = root;
  double best_res = std::abs(poly::evaluate<cd>(f, root));
  for (int iter = 0; iter < 4 && best_res > 0.0; ++iter) {
    const cd d = poly::evaluate<cd>(df, best);
    if (d == 0.0) break;
    const cd next = best - poly::evaluate<cd>(f, best) / d;
    const double res = std::abs(poly::evaluate<cd>(f, next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

}  // namespace

std::vector<Pole> polynomial_roots(std::span<const double> coeffs) {
  const auto c = poly::strip_trailing_zeros(coeffs);
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};

  std::vector<cd> raw;
  if (n == 1) {
    raw.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) companion(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) companion(n - 1, j) = -c[j] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    raw.assign(ev.data(), ev.data() + ev.size());
  }

  std::sort(raw.begin(), raw.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  std::vector<bool> used(raw.size(), false);
  std::vector<Pole> clusters;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    cd sum = raw[i];
    int count = 1;
    used[i] = true;
    const double tol = kRootClusterTolerance * (1.0 + std::abs(raw[i]));
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) <= 2.0 * tol) {
        sum += raw[j];
        ++count;
        used[j] = true;
      }
    }
    cd value = polish_root(c, sum / static_cast<double>(count), count);
    if (std::abs(value.imag()) <= kRootClusterTolerance * (1.0 + std::abs(value)))
      value = cd(value.real(), 0.0);
    clusters.push_back({value, count});
  }

  // Enforce exact conjugate symmetry: keep upper-half-plane members and mirror them.
  std::vector<Pole> out;
  for (const auto& p : clusters)
    if (p.value.imag() == 0.0) out.push_back(p);
  for (const auto& p : clusters) {
    if (p.value.imag() <= 0.0) continue;
    auto partner = std::min_element(clusters.begin(), clusters.end(), [&](const Pole& a, const Pole& b) {
      return std::abs(a.value - std::conj(p.value)) < std::abs(b.value - std::conj(p.value));
    });
    const cd avg = 0.5 * (p.value + std::conj(partner->value));
    out.push_back({avg, p.multiplicity});
    out.push_back({std::conj(avg), p.multiplicity});
  }
  return out;
}

PoleZeroForm find_poles_zeros(const RationalTransferFunction& tf) {
  PoleZeroForm out;
  out.gain = tf.num().back() / tf.den().back();
  out.poles = polynomial_roots(tf.den());
  for (const auto& z : polynomial_roots(tf.num()))
    for (int k = 0; k < z.multiplicity; ++k) out.zeros.push_back(z.value);
  out.stable = std::all_of(out.poles.begin(), out.poles.end(),
                           [](const Pole& p) { return p.value.real() < 0.0; });
  return out;
}

std::complex<double> PartialFractions::evaluate(std::complex<double> s) const {
  cd acc = 0.0;
  for (const auto& t : real_terms)
    acc += t.coefficient / std::pow(t.time_constant() * s + 1.0, t.multiplicity);
  for (const auto& t : pair_terms)
    acc += (t.coefficient + t.s_coefficient * s) /
           (t.theta * t.theta * s * s + 2.0 * t.xi * t.theta * s + 1.0);
  return acc;
}

PartialFractions partial_fractions(const RationalTransferFunction& tf) {
  const auto pz = find_poles_zeros(tf);
  const auto& num = tf.num();
  const auto& den = tf.den();
  const std::vector<cd> den_c(den.begin(), den.end());
  const auto dnum = poly::derivative(num);

  PartialFractions out;
  for (const auto& p : pz.poles) {
    const cd lambda = p.value;
    if (std::abs(lambda) <= kRootClusterTolerance)
      throw Error(ErrorKind::UnsupportedPoleStructure, "pole at s = 0 has no time-constant form");
    const bool real = lambda.imag() == 0.0;
    if (real && p.multiplicity > 2)
      throw Error(ErrorKind::UnsupportedPoleStructure,
                  "real pole of multiplicity " + std::to_string(p.multiplicity));
    if (!real && p.multiplicity > 1)
      throw Error(ErrorKind::UnsupportedPoleStructure, "repeated complex pole pair");
    if (!real && lambda.imag() < 0.0) continue;  // handled with its partner

    // D(s) = (s - lambda)^mult * R(s)
    auto rest = poly::deflate(den_c, lambda);
    if (p.multiplicity == 2) rest = poly::deflate(rest, lambda);
    // Horner for R(lambda) and R'(lambda) together.
    cd r_val = 0.0, r_der = 0.0;
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
      r_der = r_der * lambda + r_val;
      r_val = r_val * lambda + *it;
    }
    const cd m_val = poly::evaluate<cd>(num, lambda);
    const cd m_der = poly::evaluate<cd>(dnum, lambda);

    if (real) {
      const double lam = lambda.real();
      const double theta = -1.0 / lam;
      if (p.multiplicity == 1) {
        const double residue = (m_val / r_val).real();
        out.real_terms.push_back({lam, 1, residue * theta});
      } else {
        const double r2 = (m_val / r_val).real();
        const double r1 = ((m_der * r_val - m_val * r_der) / (r_val * r_val)).real();
        out.real_terms.push_back({lam, 1, r1 * theta});
        out.real_terms.push_back({lam, 2, r2 * theta * theta});
      }
    } else {
      // r/(s-l) + conj(r)/(s-conj(l)) = (2Re(r) s - 2Re(r conj(l))) / (s^2 - 2Re(l) s + |l|^2)
      const cd residue = m_val / r_val;
      const double mag = std::abs(lambda);
      const double theta = 1.0 / mag;
      const double xi = -lambda.real() / mag;
      const double scale = theta * theta;
      out.pair_terms.push_back({theta, xi, -2.0 * (residue * std::conj(lambda)).real() * scale,
                                2.0 * residue.real() * scale});
    }
  }
  return out;
}

double psd(const RationalTransferFunction& tf, double omega) {
  const cd s(0.0, omega);
  const cd d = poly::evaluate<cd>(tf.den(), s);
  if (std::abs(d) <= 1e-14 * tf.den_scale())
    throw Error(ErrorKind::PoleOnImaginaryAxis, "D(i omega) = 0 at omega = " + std::to_string(omega));
  return std::norm(poly::evaluate<cd>(tf.num(), s) / d);
}

}  // namespace shaping
