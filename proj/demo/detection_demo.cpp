// Minimal library walkthrough: set up the scenario of the reproduced figures,
// calibrate the threshold for a 1% false-alarm rate, run the detector on one
// simulated window under each hypothesis, then estimate both rates by Monte
// Carlo.

#include <iostream>

#include "jamdet/jamdet.hpp"

using namespace jamdet;

int main() {
  SystemConfig sys;
  sys.m_r = 100;
  sys.m_w = 4;
  sys.k = 8;
  sys.tau = 10;
  sys.l_blocks = 10;
  sys.t_samples = 200;
  sys.p = 1.0;
  sys.q = db_to_linear(-17.0);
  sys.beta_users = std::vector<double>(8, 1.0);
  sys.beta_w = 1.0;

  DetectorConfig det = DetectorConfig::from_target_pfa(0.01);
  det.resolve(sys);
  std::cout << "mu' for target P_FA = 0.01: " << det.mu_prime() << "\n";
  std::cout << "effective jamming power q~ = "
            << q_tilde(sys.q, sys.m_w, sys.beta_w) << "\n\n";

  const PilotBook book(sys.tau);
  for (bool jammer : {false, true}) {
    const UnusedPilotObservations obs = detail::simulate_observations(
        sys, book, jammer, false, false, /*seed=*/7, /*trial=*/0);
    const DetectionReport report = detect(obs, sys, det);
    std::cout << (jammer ? "jammer present:  " : "jammer absent:   ")
              << "q_hat = " << report.q_hat << ", decision = "
              << (report.decision == Decision::jammer_detected
                      ? "jammer-detected"
                      : "clean")
              << "\n";
  }

  Scenario sc;
  sc.system = sys;
  sc.detector = det;
  sc.n_trials = 5000;
  sc.seed = 7;

  sc.jammer_present = false;
  const EmpiricalEstimate pfa = run_trials(sc, 2);
  sc.jammer_present = true;
  const EmpiricalEstimate pc = run_trials(sc, 2);

  const double qt = q_tilde(sys.q, sys.m_w, sys.beta_w);
  std::cout << "\nempirical P_FA = " << pfa.rate << "  (closed form "
            << pfa_exact(det.mu_prime(), sys.m_r, sys.l_blocks, sys.tau, sys.k,
                         Variant::complex_consistent)
            << ")\n";
  std::cout << "empirical P_C  = " << pc.rate << "  (closed form "
            << pc_exact(det.mu_prime(), qt, sys.m_r, sys.l_blocks, sys.tau,
                        sys.k, Variant::complex_consistent)
            << ")\n";
  return 0;
}
