#pragma once

#include "invt/entropy.hpp"
#include "invt/recoupling.hpp"

#include <cstdint>
#include <string>

namespace invt {

struct RandomStateSpec {
  Spin j;
  int n = 0;
  int n_a = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  enum class Subspace { invariant, full } subspace = Subspace::invariant;
  bool keep_records = false;
};

struct SampleRecord {
  long index = 0;
  double z0 = 0;  // squared trace of rho_A, 1 up to rounding
  double z1 = 0;  // purity of rho_A
  double s2 = 0;  // -ln z1
  double s = 0;   // von Neumann, eigenvalues below 1e-14 dropped
};

struct SampleStats {
  long samples = 0;
  double mean_z1 = 0;
  double var_z1 = 0;  // unbiased sample variance
  double mean_z0 = 0;
  double s2_of_mean_z1 = 0;  // -ln(mean Z1), the analytic convention
  double mean_s2 = 0;        // mean of -ln Z1
  double mean_s = 0;
  double std_err_z1 = 0;
  std::vector<SampleRecord> records;  // filled when keep_records
};

/// Haar samples over the chosen subspace via normalized complex Gaussian
/// coefficients in an orthonormal basis; per-sample counter-based RNG
/// streams keyed by (seed, index) make the run order-independent.
/// Guard: (2j+1)^n <= 10^7 components.
SampleStats sample_states(const RandomStateSpec& spec);

/// Max entrywise deviation of the empirical mean of rho x rho from
/// (identity + swap)/(dim^2 + dim) in invariant-subspace coordinates.
struct SchurReport {
  long dim_inv = 0;
  long samples = 0;
  double max_residual = 0;
};

SchurReport schur_check(const Spin& j, int n, long samples, std::uint64_t seed);

/// Empirical tails of Z1 and S2 against the analytic Markov bounds.
struct ConcentrationReport {
  Spin j;
  int n = 0;
  int n_a = 0;
  long samples = 0;
  double delta = 0;
  double z1_analytic = 0;
  double s2_analytic = 0;
  double tail_z1 = 0;       // empirical Prob(|Z1/Z1bar - 1| >= delta/4)
  double tail_s2 = 0;       // empirical Prob(|S2 - S2bar| >= delta)
  double bound_z1 = 0;      // Markov bound f/(delta/4)^2
  double bound_z0 = 0;      // 96/(delta^2 dim)
};

ConcentrationReport concentration_experiment(const RandomStateSpec& spec, double delta);

/// RFC-4180 CSV of per-sample records (requires keep_records).
std::string records_csv(const SampleStats& stats);

}  // namespace invt
