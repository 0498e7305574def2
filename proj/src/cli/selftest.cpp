#include "bosefold/scenario.hpp"

#include "bosefold/entanglement.hpp"
#include "bosefold/folding.hpp"
#include "bosefold/heisenberg.hpp"
#include "bosefold/oracle/dense_fock.hpp"

#include <random>

namespace bosefold::cli {

namespace {

double amplitude_deviation(const BlockDecimationState& state, const oracle::SparseState& ref, int m) {
  double worst = 0.0;
  for (const auto& cfg : oracle::fock_basis(state.n_sites(), m)) {
    const auto it = ref.find(cfg);
    const std::complex<double> expected = it == ref.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(state.amplitude(cfg) - expected));
  }
  return worst;
}

ModeAmplitudes normalized(const Eigen::VectorXcd& v) { return ModeAmplitudes{v.normalized()}; }

}  // namespace

std::vector<SelftestLine> run_selftest(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<SelftestLine> lines;
  auto record = [&](std::string name, double deviation, double tol) {
    lines.push_back(SelftestLine{std::move(name), deviation < tol, deviation, tol});
  };

  {
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const GroundMode g = ground_mode(spectral_decompose(CouplingMatrix(oracle::random_hermitian(5, rng))));
      const auto state = build_condensate_state(g.mode, 3);
      worst = std::max(worst, amplitude_deviation(state, oracle::condensate_multinomial(g.mode.coefficients, 3), 3));
    }
    record("ground_state_amplitudes", worst, 1e-9);
  }

  {
    const Eigen::MatrixXcd r = oracle::random_hermitian(4, rng);
    const auto basis = oracle::fock_basis(4, 2);
    Eigen::VectorXcd c0(4);
    c0 << 1.0, 0.0, 0.0, 0.0;
    const Eigen::VectorXcd psi0 = oracle::to_vector(oracle::condensate_multinomial(c0, 2), basis);
    const Spectrum spec = spectral_decompose(CouplingMatrix(r));
    double worst = 0.0;
    for (double t : {0.3, 1.7}) {
      const Eigen::VectorXcd ref = oracle::evolve(r, basis, psi0, t);
      const auto state = build_condensate_state(ModeAmplitudes{propagate(spec, t).entries * c0}, 2);
      for (std::size_t i = 0; i < basis.size(); ++i)
        worst = std::max(worst, std::abs(state.amplitude(basis[i]) - ref(static_cast<Eigen::Index>(i))));
    }
    record("dynamics_amplitudes", worst, 1e-8);
  }

  {
    const PropagatorMatrix a = propagate(spectral_decompose(build_jx(6)), std::numbers::pi / 2);
    const auto packets = packet_modes({{1, 2}, {6, 2}}, a);
    const auto state = build_condensate_state(packets[0].mode, 2, packets[1].mode, 2);
    const auto ref = oracle::two_sum_state(packets[0].mode.coefficients, 2, packets[1].mode.coefficients, 2);
    record("two_sum_amplitudes", amplitude_deviation(state, ref, 4), 1e-9);
  }

  {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd z(5), c(5);
    for (int k = 0; k < 5; ++k) {
      z(k) = {normal(rng), normal(rng)};
      c(k) = {normal(rng), normal(rng)};
    }
    const auto state = build_condensate_state(normalized(z), 1, normalized(c), 2);
    const auto ref = oracle::two_sum_state(z.normalized(), 1, c.normalized(), 2);
    record("random_two_sum_amplitudes", amplitude_deviation(state, ref, 3), 1e-9);

    double worst = 0.0;
    for (int b = 1; b < 5; ++b) {
      const Eigen::VectorXd got = state.schmidt_values(b);
      const Eigen::VectorXd want = oracle::schmidt_values(ref, b);
      for (Eigen::Index i = 0; i < want.size(); ++i)
        worst = std::max(worst, std::abs((i < got.size() ? got(i) : 0.0) - want(i)));
    }
    record("schmidt_spectra", worst, 1e-9);

    const Eigen::MatrixXcd rho = state.reduced_density_two_sites(1, 5);
    const Eigen::MatrixXcd rho_ref = oracle::reduced_density(ref, 1, 5, state.local_dim());
    record("reduced_density_1N", (rho - rho_ref).cwiseAbs().maxCoeff(), 1e-9);
    record("log_negativity_1N",
           std::abs(logneg_partial_transpose(rho).value - logneg_partial_transpose(rho_ref).value), 1e-8);
  }

  {
    const auto state = build_condensate_state(normalized(Eigen::Vector4cd(1.0, 1.0, 0.0, 0.0)), 8);
    record("binomial_end_entanglement",
           std::abs(logneg_pure(state.schmidt_values(1)).value - binomial_end_entanglement_exact(8).value), 1e-9);
  }
  return lines;
}

}  // namespace bosefold::cli
