#include "invt/montecarlo.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

namespace invt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// counter-based per-sample stream: the state depends only on (seed, index)
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL);
    state_ = splitmix64(s);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }
  std::complex<double> gaussian() {  // standard complex normal, E|z|^2 = 1
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log(u1));
    double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::uint64_t state_ = 0;
};

Eigen::VectorXcd draw_normalized(SampleRng& rng, long dim) {
  Eigen::VectorXcd c(dim);
  for (long k = 0; k < dim; ++k) c[k] = rng.gaussian();
  c /= c.norm();
  return c;
}

long pow_long(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

SampleStats sample_states(const RandomStateSpec& spec) {
  if (spec.samples < 1) throw std::invalid_argument("sample_states: samples < 1");
  if (spec.n_a < 1 || spec.n_a > spec.n / 2)
    throw std::invalid_argument("sample_states: need 1 <= n_A <= n/2");
  const long d = spec.j.twice().convert_to<long>() + 1;
  if (std::pow(static_cast<double>(d), spec.n) > 1e7)
    throw guard_error("sample_states: component guard exceeded");
  const long size_a = pow_long(d, spec.n_a);
  const long size_b = pow_long(d, spec.n - spec.n_a);

  Eigen::MatrixXd basis;  // empty in full mode
  long dim = size_a * size_b;
  if (spec.subspace == RandomStateSpec::Subspace::invariant) {
    InvariantBasis ib = invariant_basis(spec.j, spec.n, spec.n_a);
    if (ib.dim_inv() == 0) throw std::domain_error("sample_states: empty invariant subspace");
    for (long k = 0; k < ib.dim_inv(); ++k) {
      if (invariance_residual(spec.j, spec.n, ib.vectors.col(k)) > 1e-10)
        throw std::logic_error("sample_states: basis vector fails the invariance check");
    }
    basis = std::move(ib.vectors);
    dim = basis.cols();
  }

  SampleStats st;
  st.samples = spec.samples;
  if (spec.keep_records) st.records.reserve(spec.samples);
  double sum_z1 = 0, sum_z1sq = 0, sum_z0 = 0, sum_s2 = 0, sum_s = 0;

  Eigen::MatrixXcd g(size_a, size_b), rho(size_a, size_a);
  for (long i = 0; i < spec.samples; ++i) {
    SampleRng rng(spec.seed, static_cast<std::uint64_t>(i));
    Eigen::VectorXcd c = draw_normalized(rng, dim);
    Eigen::VectorXcd psi;
    if (basis.size() > 0)
      psi = basis * c;
    else
      psi = c;
    // leg 0 is the most significant digit, so psi is G in row-major order
    for (long ka = 0; ka < size_a; ++ka)
      for (long kb = 0; kb < size_b; ++kb) g(ka, kb) = psi[ka * size_b + kb];
    rho.noalias() = g * g.adjoint();
    double z0 = rho.trace().real();
    z0 *= z0;
    double z1 = rho.squaredNorm();  // Tr rho^2 for hermitian rho
    double s2 = -std::log(z1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (long k = 0; k < es.eigenvalues().size(); ++k) {
      double lam = es.eigenvalues()[k];
      if (lam > 1e-14) s -= lam * std::log(lam);
    }
    sum_z0 += z0;
    sum_z1 += z1;
    sum_z1sq += z1 * z1;
    sum_s2 += s2;
    sum_s += s;
    if (spec.keep_records) st.records.push_back({i, z0, z1, s2, s});
  }

  double ns = static_cast<double>(spec.samples);
  st.mean_z1 = sum_z1 / ns;
  st.mean_z0 = sum_z0 / ns;
  st.mean_s2 = sum_s2 / ns;
  st.mean_s = sum_s / ns;
  st.s2_of_mean_z1 = -std::log(st.mean_z1);
  st.var_z1 = spec.samples > 1 ? (sum_z1sq - ns * st.mean_z1 * st.mean_z1) / (ns - 1) : 0.0;
  if (st.var_z1 < 0) st.var_z1 = 0;
  st.std_err_z1 = std::sqrt(st.var_z1 / ns);
  return st;
}

SchurReport schur_check(const Spin& j, int n, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("schur_check: samples < 1");
  Int dim_big = invariant_dimension(j, n, std::max(1, n / 2));
  if (dim_big == 0) throw std::domain_error("schur_check: empty invariant subspace");
  if (dim_big * dim_big * dim_big * dim_big > Int(10000000))
    throw guard_error("schur_check: matrix guard exceeded");
  const long dim = dim_big.convert_to<long>();

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  Eigen::VectorXcd pair(dim * dim);
  for (long i = 0; i < samples; ++i) {
    SampleRng rng(seed, static_cast<std::uint64_t>(i));
    Eigen::VectorXcd c = draw_normalized(rng, dim);
    for (long a = 0; a < dim; ++a)
      for (long b = 0; b < dim; ++b) pair[a * dim + b] = c[a] * c[b];
    acc.noalias() += pair * pair.adjoint();  // (cc*)x(cc*) = rho x rho
  }
  acc /= static_cast<double>(samples);

  double denom = static_cast<double>(dim) * (dim + 1);
  SchurReport rep;
  rep.dim_inv = dim;
  rep.samples = samples;
  for (long a = 0; a < dim; ++a)
    for (long b = 0; b < dim; ++b)
      for (long x = 0; x < dim; ++x)
        for (long y = 0; y < dim; ++y) {
          double expect = ((a == x && b == y ? 1.0 : 0.0) + (a == y && b == x ? 1.0 : 0.0)) / denom;
          double res = std::abs(acc(a * dim + b, x * dim + y) - expect);
          rep.max_residual = std::max(rep.max_residual, res);
        }
  return rep;
}

ConcentrationReport concentration_experiment(const RandomStateSpec& spec, double delta) {
  if (!(delta > 0.0 && delta <= 2.0))
    throw std::invalid_argument("concentration_experiment: need 0 < delta <= 2");
  Z1Result z = z1_bar(spec.j, spec.n, spec.n_a);
  double z1a = z.value().convert_to<double>();
  FluctuationReport fb = fluctuation_bound(spec.j, spec.n, spec.n_a, Real(delta));

  RandomStateSpec s = spec;
  s.keep_records = true;
  SampleStats st = sample_states(s);

  ConcentrationReport rep;
  rep.j = spec.j;
  rep.n = spec.n;
  rep.n_a = spec.n_a;
  rep.samples = spec.samples;
  rep.delta = delta;
  rep.z1_analytic = z1a;
  rep.s2_analytic = -std::log(z1a);
  long hits_z1 = 0, hits_s2 = 0;
  for (const auto& r : st.records) {
    if (std::abs(r.z1 / z1a - 1.0) >= delta / 4.0) ++hits_z1;
    if (std::abs(r.s2 - rep.s2_analytic) >= delta) ++hits_s2;
  }
  rep.tail_z1 = static_cast<double>(hits_z1) / static_cast<double>(spec.samples);
  rep.tail_s2 = static_cast<double>(hits_s2) / static_cast<double>(spec.samples);
  rep.bound_z1 = fb.prob_z1.convert_to<double>();
  rep.bound_z0 = fb.prob_z0.convert_to<double>();
  return rep;
}

std::string records_csv(const SampleStats& stats) {
  std::string out = "index,Z0,Z1,S2,S\r\n";
  char buf[160];
  for (const auto& r : stats.records) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g\r\n", r.index, r.z0, r.z1,
                  r.s2, r.s);
    out += buf;
  }
  return out;
}

}  // namespace invt
