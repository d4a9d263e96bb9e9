// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shaping/cosine_basis.hpp"
#include "shaping/error_analysis.hpp"
#include "shaping/impulse_response.hpp"
#include "shaping/io.hpp"
#include "shaping/presets.hpp"
#include "shaping/random.hpp"
#include "shaping/simulation.hpp"
#include "shaping/state_space.hpp"

using namespace shaping;
using cd = std::complex<double>;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Reference errors per preset: epsilon then epsilon1, L = 4 ... 256.
struct ReferenceRow {
  const char* preset;
  double eps[7];
  double eps1[7];
};

const std::vector<int> kOrders{4, 8, 16, 32, 64, 128, 256};

const ReferenceRow kDrydenReference[] = {
    {"dryden1",
     {0.125603, 0.055877, 0.024617, 0.011053, 0.005098, 0.002411, 0.001162},
     {0.091720, 0.041186, 0.019233, 0.009241, 0.004518, 0.002231, 0.001108}},
    {"dryden2",
     {0.022098, 0.008628, 0.003592, 0.001576, 0.000720, 0.000340, 0.000164},
     {0.013487, 0.005851, 0.002711, 0.001300, 0.000635, 0.000314, 0.000156}},
    {"dryden3",
     {0.001981, 0.000877, 0.000385, 0.000173, 0.000080, 0.000038, 0.000018},
     {0.001451, 0.000645, 0.000301, 0.000144, 0.000071, 0.000035, 0.000017}},
};

const ReferenceRow kOscReference = {"osc",
                            {0.035217, 0.004319, 0.000524, 0.000065, 8.21e-6, 1.06e-6, 1.39e-7},
                            {0.005314, 0.000531, 0.000060, 7.14e-6, 8.71e-7, 1.08e-7, 1.34e-8}};

struct RowCheck {
  double worst_eps1 = 0.0;  // absolute
  double worst_eps_excess = 0.0;  // |diff| / tolerance
  bool eps1_ok = true;
  bool eps_ok = true;
  std::string notes;
};

RowCheck check_row(const ReferenceRow& row) {
  RowCheck out;
  const auto& preset = find_preset(row.preset);
  const auto factored = error_table(preset.tf, preset.horizon, kOrders, CompositionMode::Factored);
  std::vector<ErrorReport> polynomial;
  for (std::size_t k = 0; k < kOrders.size(); ++k) {
    const double d1 = std::abs(factored[k].epsilon1 - row.eps1[k]);
    out.worst_eps1 = std::max(out.worst_eps1, d1);
    if (d1 > 5e-6) out.eps1_ok = false;
    const double tol = std::max(1e-5, 0.005 * row.eps[k]);
    const double d = std::abs(factored[k].epsilon - row.eps[k]);
    out.worst_eps_excess = std::max(out.worst_eps_excess, d / tol);
    if (d > tol) {
      out.eps_ok = false;
      if (polynomial.empty()) polynomial = error_table(preset.tf, preset.horizon, kOrders, CompositionMode::Polynomial);
      out.notes += fmt(" [%s L=%d reference %.6g factored %.6g polynomial %.6g]", row.preset, kOrders[k], row.eps[k],
                       factored[k].epsilon, polynomial[k].epsilon);
    }
  }
  return out;
}

ModalImpulseResponse kernel_of(const RationalTransferFunction& tf) {
  return impulse_from_fractions(partial_fractions(tf));
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

void criteria_tables() {
  RowCheck rows[3];
  for (int i = 0; i < 3; ++i) rows[i] = check_row(kDrydenReference[i]);
  double worst1 = 0.0, worst = 0.0;
  bool ok1 = true, ok = true;
  std::string notes;
  for (const auto& r : rows) {
    worst1 = std::max(worst1, r.worst_eps1);
    worst = std::max(worst, r.worst_eps_excess);
    ok1 = ok1 && r.eps1_ok;
    ok = ok && r.eps_ok;
    notes += r.notes;
  }
  report(1, "dryden epsilon1 reference", ok1, fmt("max |diff| = %.3g (tol 5e-6) over 21 cells", worst1));
  report(2, "dryden epsilon reference", ok, fmt("max |diff|/tol = %.3f over 21 cells%s", worst, notes.c_str()));

  const auto r4 = check_row(kOscReference);
  report(3, "osc epsilon and epsilon1 reference", r4.eps1_ok && r4.eps_ok,
         fmt("max |diff eps1| = %.3g, max |diff eps|/tol = %.3f%s", r4.worst_eps1, r4.worst_eps_excess, r4.notes.c_str()));
}

void criterion_norms() {
  const double e_1 = std::exp(-10.0 / 3.0), e_2 = std::exp(-2.5), e_3 = std::exp(-35.0 / 12.0);
  const double a = 5.0 * std::sqrt(3.0) / 2.0;
  const double symbolic[4] = {
      e_1 / 4.0 + 7.0 / 12.0,
      177.0 / 256.0 * e_2 + 7.0 / 64.0,
      17.0 / 256.0 * e_2 + e_1 / 4.0 - 75.0 / 343.0 * e_3 + 379.0 / 65856.0,
      // the bracket multiplies e^{-5/2}; with e^{-5/4} it would come to 0.6437
      (2.0 / 3.0 + std::cos(a) / 12.0 + std::sqrt(3.0) * std::sin(a) / 12.0) * e_2 + 0.5,
  };
  const double reference[4] = {0.592252, 0.166129, 0.008292, 0.541179};
  double worst_reference = 0.0, worst_symbolic = 0.0;
  int i = 0;
  for (const auto& p : presets()) {
    const double norm = kernel_norm_squared(kernel_of(p.tf), p.horizon);
    worst_reference = std::max(worst_reference, std::abs(norm - reference[i]));
    worst_symbolic = std::max(worst_symbolic, std::abs(norm - symbolic[i]) / symbolic[i]);
    ++i;
  }
  const bool ok = worst_reference <= 1e-6 && worst_symbolic <= 1e-12;
  report(4, "kernel norms", ok,
         fmt("max |diff reference| = %.3g, max rel diff symbolic = %.3g (k4 with exponent -5/2)", worst_reference,
             worst_symbolic));
}

void criterion_rates() {
  std::string detail;
  bool ok = true;
  for (const auto& p : presets()) {
    const auto reports = error_table(p.tf, p.horizon, kOrders);
    const double rate = convergence_rate(reports);
    const bool osc = p.name == "osc";
    const bool in = osc ? (rate >= 2.7 && rate <= 3.2) : (rate >= 0.9 && rate <= 1.2);
    ok = ok && in;
    detail += fmt("%s p=%.3f ", p.name.c_str(), rate);
  }
  report(5, "convergence rates", ok, detail + "(dryden in [0.9,1.2], osc in [2.7,3.2])");
}

void criterion_oracles() {
  const double T = 5.0;
  const int L = 16;
  const CosineBasis q(T);
  double worst = 0.0;
  std::string detail;
  auto track = [&](const char* name, double d) {
    worst = std::max(worst, d);
    detail += fmt("%s %.2g ", name, d);
  };

  track("Pinv", max_abs_diff(integration_matrix(T, L).matrix, project_kernel(q, ModalImpulseResponse::unit_step(), L)));

  // P as the bilinear form of d/dt on functions vanishing at 0: q_i(T) q_j(T) - int q_j q_i'.
  Eigen::MatrixXd p_quad(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const double w = i * std::numbers::pi / T;
      const double integral =
          i == 0 ? 0.0
                 : oracle::integrate([&](double t) { return -std::sqrt(2.0 / T) * w * std::sin(w * t) * q.value(j, t); },
                                     0.0, T);
      p_quad(i, j) = q.value(i, T) * q.value(j, T) - integral;
    }
  track("P", max_abs_diff(differentiation_matrix(T, L).matrix, p_quad));

  for (double theta : {3.0, 4.0}) {
    const ModalImpulseResponse k({{ModalKind::Exp, -1.0 / theta, 0.0, 1.0 / theta}});
    track(theta == 3.0 ? "A3" : "A4",
          max_abs_diff(aperiodic_matrix(BlockParameters::aperiodic(theta), T, L).matrix, project_kernel(q, k, L)));
  }
  const ModalImpulseResponse k2({{ModalKind::TExp, -0.25, 0.0, 1.0 / 16.0}});
  track("A4^2", max_abs_diff(aperiodic2_matrix(BlockParameters::aperiodic(4.0), T, L).matrix, project_kernel(q, k2, L)));
  track("K", max_abs_diff(oscillatory_matrix(BlockParameters::oscillatory(2.0, 0.5), T, L).matrix,
                          project_kernel(q, kernel_of(oscillatory_block(2.0, 0.5)), L)));
  report(6, "closed forms vs quadrature", worst <= 1e-8, "max |diff| " + detail + "(tol 1e-8)");
}

RationalTransferFunction random_stable_tf(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> rate(0.1, 3.0), freq(0.2, 3.0), coef(-2.0, 2.0), lead(0.5, 2.0);
  std::vector<cd> poles;
  while (static_cast<int>(poles.size()) < n) {
    if (n - static_cast<int>(poles.size()) >= 2 && rng() % 2) {
      const cd p(-rate(rng), freq(rng));
      poles.push_back(p);
      poles.push_back(std::conj(p));
    } else {
      poles.push_back(-rate(rng));
    }
  }
  auto den = poly::from_roots(poles);
  const double a = lead(rng);
  for (double& c : den) c *= a;
  std::vector<double> num(1 + rng() % n);
  for (double& b : num) b = coef(rng);
  num.back() = lead(rng);
  return RationalTransferFunction(num, den);
}

void criterion_realizations() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> re(0.0, 2.0), im(-3.0, 3.0);
  double worst_b = 0.0, worst_res = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto tf = random_stable_tf(rng, 1 + trial % 6);
    const auto rec = companion_realization(tf);
    const auto interp = interpolation_realization(tf);
    worst_b = std::max(worst_b, (rec.B - interp.B).cwiseAbs().maxCoeff());
    for (int k = 0; k < 10; ++k) {
      const cd s(re(rng), im(rng));
      worst_res = std::max({worst_res, transfer_residual(rec, tf, s), transfer_residual(interp, tf, s)});
    }
  }
  report(7, "realization consistency", worst_b <= 1e-9 && worst_res <= 1e-9,
         fmt("50 random stable tfs, max |B diff| = %.3g, max residual = %.3g (tol 1e-9)", worst_b, worst_res));
}

void criterion_monte_carlo() {
  constexpr std::size_t kTrajectories = 10000, kSteps = 5000;
  const std::vector<double> times{1.0, 2.5, 5.0};
  const std::vector<std::size_t> idx{1000, 2500, 5000};
  bool ok = true;
  double worst_z = 0.0;
  std::string detail;
  for (const char* name : {"dryden1", "osc"}) {
    const auto& p = find_preset(name);
    const auto k = kernel_of(p.tf);
    const auto w = compose_rational(p.tf, p.horizon, 256);
    const auto real = companion_realization(p.tf);
    RunningMoments spectral(times), em(times), ito(times);
    std::vector<double> pick(3);
    for (std::size_t n = 0; n < kTrajectories; ++n) {
      GaussianSource s1(101, n), s2(202, n), s3(303, n);
      const Eigen::VectorXd x = w.matrix * sample_noise_spectrum(s1, 256);
      spectral.add(spectral_evaluate(std::span<const double>(x.data(), 256), p.horizon, times));
      const auto a = euler_maruyama(real, p.horizon, kSteps, s2);
      for (int j = 0; j < 3; ++j) pick[j] = a.values[idx[j]];
      em.add(pick);
      const auto b = ito_sum_simulate(k, p.horizon, kSteps, s3);
      for (int j = 0; j < 3; ++j) pick[j] = b.values[idx[j]];
      ito.add(pick);
    }
    const EnsembleStats st[3] = {spectral.stats(), em.stats(), ito.stats()};
    for (int j = 0; j < 3; ++j) {
      const double exact = variance_at(k, times[j]);
      for (const auto& s : st) {
        const double z = std::abs(s.variance[j] - exact) / s.stderr_variance[j];
        worst_z = std::max(worst_z, z);
        ok = ok && z <= 3.0;
      }
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const double se = std::hypot(st[a].stderr_variance[j], st[b].stderr_variance[j]);
          const double z = std::abs(st[a].variance[j] - st[b].variance[j]) / se;
          worst_z = std::max(worst_z, z);
          ok = ok && z <= 3.0;
        }
    }
    detail += fmt("%s var(5): exact %.4f spectral %.4f sde %.4f ito %.4f; ", name, variance_at(k, 5.0),
                  st[0].variance[2], st[1].variance[2], st[2].variance[2]);
  }
  report(8, "cross-method variance", ok, detail + fmt("max z = %.2f (tol 3)", worst_z));
}

void criterion_whitening() {
  double worst = 0.0;
  std::string detail;
  for (const auto& p : presets()) {
    const auto w = compose_rational(p.tf, p.horizon, 64);
    const auto inv = whitening_rational(p.tf, p.horizon, 64);
    const double d = (inv.matrix * w.matrix - Eigen::MatrixXd::Identity(64, 64)).norm();
    worst = std::max(worst, d);
    detail += fmt("%s %.2g ", p.name.c_str(), d);
  }
  report(9, "whitening round trip", worst <= 1e-8, "||W^-1 W - E|| " + detail + "(tol 1e-8)");
}

void criterion_orthogonality() {
  const int L = 16;
  double worst = 0.0;
  std::string detail;
  for (const auto& p : presets()) {
    const CosineBasis q(p.horizon);
    const auto k = kernel_of(p.tf);
    const Eigen::MatrixXd w = compose_rational(p.tf, p.horizon, L).matrix;
    const auto rep = error_decomposition(p.tf, p.horizon, L);
    Eigen::VectorXd row(L);
    double row_t = -1.0;
    const double direct = oracle::square_split(
        [&](double t, double tau) {
          if (t != row_t) {
            row = w.transpose() * q.values(L, t);
            row_t = t;
          }
          const double approx = row.dot(q.values(L, tau));
          const double diff = (t > tau ? k(t - tau) : 0.0) - approx;
          return diff * diff;
        },
        p.horizon, 1e-11);
    const double d = std::abs(direct - (rep.epsilon1 + rep.epsilon2));
    worst = std::max(worst, d);
    detail += fmt("%s %.2g ", p.name.c_str(), d);
  }
  report(10, "orthogonality of the error split", worst <= 1e-7, "|quadrature - (eps1+eps2)| " + detail + "(tol 1e-7)");
}

std::string run_cli(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / ("shapefilter_acc_" + std::to_string(::getpid()));
  const std::string cmd = std::string("\"") + SHAPEFILTER_EXE + "\" " + args + " >" + out.string();
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "<exit " + std::to_string(status) + ">";
  std::ifstream in(out, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism() {
  bool ok = true;
  std::string detail;
  for (const char* method : {"spectral", "sde", "ito"}) {
    const std::string args = std::string("simulate --preset dryden3 --n 4 --grid 500 --seed 42 --method ") + method;
    const auto a = run_cli(args), b = run_cli(args);
    const bool same = a == b && a.rfind("<exit", 0) != 0;
    ok = ok && same;
    detail += fmt("%s %s (%zu bytes) ", method, same ? "identical" : "DIFFERENT", a.size());
  }
  // in-process writer on regenerated trajectories
  const auto w = compose_rational(find_preset("osc").tf, 5.0, 128);
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    std::ostringstream os;
    GaussianSource src(7, 3);
    write_trajectory_csv(os, spectral_simulate(w, src, 1000));
    *out = os.str();
  }
  ok = ok && first == second;
  detail += first == second ? "library identical" : "library DIFFERENT";
  report(11, "determinism", ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<const char*, std::function<void()>>> steps{
      {"tables", criteria_tables},           {"norms", criterion_norms},
      {"rates", criterion_rates},            {"oracles", criterion_oracles},
      {"realizations", criterion_realizations}, {"monte carlo", criterion_monte_carlo},
      {"whitening", criterion_whitening},    {"orthogonality", criterion_orthogonality},
      {"determinism", criterion_determinism},
  };
  for (const auto& [name, fn] : steps) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s raised: %s\n", name, e.what());
      ++failures;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failing criteria, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
