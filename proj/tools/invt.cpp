#include "invt/entropy.hpp"
#include "invt/montecarlo.hpp"
#include "invt/recoupling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace invt;

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145817656807;

struct NumberOpts {
  std::string j_str, d_str;
  unsigned digits = kDefaultPrecision;
  std::string format;
  std::string units = "nats";

  Spin spin() const {
    if (!d_str.empty()) return spin_for_dimension(parse_big_integer(d_str));
    return parse_spin(j_str);
  }
  Int dim_leg() const { return spin().twice() + 1; }
};

void add_number_opts(CLI::App* cmd, NumberOpts& o, const char* default_format,
                     bool allow_d = true) {
  auto* j = cmd->add_option("--j", o.j_str, "spin per leg (e.g. 2, 3/2, 1.5, 1e100)");
  if (allow_d) {
    auto* d = cmd->add_option("--d", o.d_str, "local dimension 2j+1 (e.g. 1e100)");
    j->excludes(d);
    d->excludes(j);
  }
  cmd->add_option("--precision", o.digits, "working precision in decimal digits")
      ->default_val(kDefaultPrecision);
  o.format = default_format;
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--units", o.units, "entropy units")
      ->check(CLI::IsMember({"nats", "bits"}));
}

// full-precision decimal string, in the requested entropy units
std::string ent_str(const Real& x, const NumberOpts& o) {
  Real v = o.units == "bits" ? Real(x / Real(kLn2)) : x;
  return v.str(precision());
}

std::string real_str(const Real& x) { return x.str(precision()); }

double ent_double(const Real& x, const NumberOpts& o) {
  double v = x.convert_to<double>();
  return o.units == "bits" ? v / kLn2 : v;
}

std::string spin_str(const Int& twice) {
  if (twice % 2 == 0) return Int(twice / 2).str();
  return twice.str() + "/2";
}

json entropy_json(const EntropyReport& r, const NumberOpts& o) {
  json row;
  row["n"] = r.n;
  row["n_A"] = r.n_a;
  row["j"] = spin_str(r.j.twice());
  row["dim_inv"] = r.dim_inv.str();
  row["Z1_bar"] = real_str(r.z1_bar);
  if (r.z1_bar_exact)
    row["Z1_bar_exact"] = numerator(*r.z1_bar_exact).str() + "/" +
                          denominator(*r.z1_bar_exact).str();
  row["S2_bar"] = ent_str(r.s2_bar, o);
  row["S_max"] = ent_str(r.s_max, o);
  row["I_inv"] = ent_str(r.i_inv, o);
  row["I_full"] = ent_str(r.i_full, o);
  row["lambda_n"] = r.lambda_n;
  row["units"] = o.units;
  return row;
}

void warn_precision(const NumberOpts& o) {
  // ln comparisons at scale d need about twice log10(d) digits
  size_t mag = o.spin().twice().str().size();
  if (o.digits < 2 * mag)
    std::cerr << "warning: precision " << o.digits << " digits is below 2*log10(d) ~ "
              << 2 * mag << "; results may lose accuracy\n";
}

std::string fixed3(double v) {
  char buf[64];
  if (v != 0.0 && std::abs(v) < 5e-4)
    std::snprintf(buf, sizeof(buf), "%.1e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

int cmd_table(const NumberOpts& o, int n_min, int n_max, const std::string& json_out) {
  set_precision(o.digits);
  warn_precision(o);
  Spin j = o.spin();
  auto rows = deficit_table(j, n_min, n_max);

  json out;
  out["d"] = Int(j.twice() + 1).str();
  out["j"] = spin_str(j.twice());
  out["units"] = o.units;
  out["rows"] = json::array();
  for (const auto& r : rows) {
    json row = entropy_json(r, o);
    if (r.n == 4)
      row["note"] =
          "exact closed form ln(2 sum_{I<=2j} 1/(2I+1)) - ln(1+1/d); the widely "
          "printed reference value 8.096 does not follow from it";
    out["rows"].push_back(row);
  }

  if (!json_out.empty()) {
    std::ofstream f(json_out);
    f << out.dump(2) << "\n";
  }

  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "n,n_A,I_inv,I_full\r\n";
    for (const auto& r : rows)
      std::cout << r.n << "," << r.n_a << "," << fixed3(ent_double(r.i_inv, o)) << ","
                << fixed3(ent_double(r.i_full, o)) << "\r\n";
  } else {
    std::printf("%4s %4s %12s %12s\n", "n", "n_A", "I_inv(A)", "I(A)");
    for (const auto& r : rows) {
      std::printf("%4d %4d %12s %12s", r.n, r.n_a, fixed3(ent_double(r.i_inv, o)).c_str(),
                  fixed3(ent_double(r.i_full, o)).c_str());
      if (r.n == 4) std::printf("   (closed form; reference tables print 8.096)");
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_entropy(const NumberOpts& o, int n, int n_a) {
  set_precision(o.digits);
  warn_precision(o);
  if (n_a <= 0) n_a = n / 2;
  EntropyReport r = entropy_report(o.spin(), n, n_a);
  json out = entropy_json(r, o);
  if (o.format == "table") {
    std::printf("n=%d n_A=%d dim_inv=%s\n", r.n, r.n_a, r.dim_inv.str().c_str());
    std::printf("Z1_bar = %.12g\n", r.z1_bar.convert_to<double>());
    std::printf("S2_bar = %.12g %s\n", ent_double(r.s2_bar, o), o.units.c_str());
    std::printf("I_inv  = %.12g %s\n", ent_double(r.i_inv, o), o.units.c_str());
    std::printf("I_full = %.6g %s\n", ent_double(r.i_full, o), o.units.c_str());
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_degeneracy(const NumberOpts& o, int n, const std::string& J_str, bool symbolic) {
  set_precision(o.digits);
  Spin j = o.spin();
  json out;
  out["j"] = spin_str(j.twice());
  out["n"] = n;
  if (!J_str.empty()) {
    Spin J = parse_spin(J_str);
    Int v = symbolic ? degeneracy_symbolic(j, n).eval_two(J.twice())
                     : degeneracy_direct(j, n, J);
    out["J"] = spin_str(J.twice());
    out["D"] = v.str();
    if (o.format == "table")
      std::printf("D(%s, %d, %s) = %s\n", spin_str(j.twice()).c_str(), n,
                  spin_str(J.twice()).c_str(), v.str().c_str());
    else
      std::cout << out.dump(2) << "\n";
    return 0;
  }
  json vals = json::object();
  if (symbolic) {
    PiecewisePoly p = degeneracy_symbolic(j, n);
    for (Int t = p.two_min(); t <= p.two_max(); t += 2) vals[spin_str(t)] = p.eval_two(t).str();
  } else {
    DegeneracyTable tab = degeneracy_table(j, n);
    for (const auto& [t, v] : tab.as_map()) vals[spin_str(t)] = v.str();
  }
  out["D"] = vals;
  if (o.format == "table") {
    std::printf("%8s %s\n", "J", "D");
    for (auto it = vals.begin(); it != vals.end(); ++it)
      std::printf("%8s %s\n", it.key().c_str(), it.value().get<std::string>().c_str());
  } else if (o.format == "csv") {
    std::cout << "J,D\r\n";
    for (auto it = vals.begin(); it != vals.end(); ++it)
      std::cout << it.key() << "," << it.value().get<std::string>() << "\r\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_dimension(const NumberOpts& o, int n, int n_a) {
  set_precision(o.digits);
  if (n_a <= 0) n_a = n / 2;
  Spin j = o.spin();
  Int dim = invariant_dimension(j, n, n_a);
  if (o.format == "json") {
    json out;
    out["j"] = spin_str(j.twice());
    out["n"] = n;
    out["n_A"] = n_a;
    out["dim_inv"] = dim.str();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dim.str() << "\n";
  }
  return 0;
}

int cmd_fluctuation(const NumberOpts& o, int n, int n_a, double delta) {
  set_precision(o.digits);
  if (n_a <= 0) n_a = n / 2;
  FluctuationReport r = fluctuation_bound(o.spin(), n, n_a, Real(delta));
  json out;
  out["j"] = spin_str(r.j.twice());
  out["n"] = r.n;
  out["n_A"] = r.n_a;
  out["dim_inv"] = r.dim_inv.str();
  out["f_bound"] = real_str(r.f_bound);
  out["f_bound_exact"] =
      numerator(r.f_bound_exact).str() + "/" + denominator(r.f_bound_exact).str();
  out["z0_var_bound"] = real_str(r.z0_var_bound);
  out["delta"] = delta;
  out["markov_prob_z1"] = real_str(r.prob_z1);
  out["markov_prob_z0"] = real_str(r.prob_z0);
  if (o.format == "table") {
    std::printf("f(%s, %d; n_A=%d) = %.12g  (exact %s)\n", spin_str(r.j.twice()).c_str(),
                r.n, r.n_a, r.f_bound.convert_to<double>(),
                out["f_bound_exact"].get<std::string>().c_str());
    std::printf("Markov tail bound at delta=%g: Z1 %.6g, Z0 %.6g\n", delta,
                r.prob_z1.convert_to<double>(), r.prob_z0.convert_to<double>());
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

json stats_json(const SampleStats& st) {
  json out;
  out["samples"] = st.samples;
  out["mean_Z1"] = st.mean_z1;
  out["var_Z1"] = st.var_z1;
  out["std_err_Z1"] = st.std_err_z1;
  out["mean_Z0"] = st.mean_z0;
  out["S2_of_mean_Z1"] = st.s2_of_mean_z1;
  out["mean_S2"] = st.mean_s2;
  out["mean_S"] = st.mean_s;
  return out;
}

int cmd_sample(const NumberOpts& o, int n, int n_a, long samples, std::uint64_t seed,
               const std::string& subspace, const std::string& records_path) {
  set_precision(o.digits);
  if (n_a <= 0) n_a = n / 2;
  RandomStateSpec spec;
  spec.j = o.spin();
  spec.n = n;
  spec.n_a = n_a;
  spec.samples = samples;
  spec.seed = seed;
  spec.subspace = subspace == "full" ? RandomStateSpec::Subspace::full
                                     : RandomStateSpec::Subspace::invariant;
  spec.keep_records = !records_path.empty() || o.format == "csv";
  SampleStats st = sample_states(spec);
  if (!records_path.empty()) {
    std::ofstream f(records_path, std::ios::binary);
    f << records_csv(st);
  }
  if (o.format == "csv") {
    std::cout << records_csv(st);
    return 0;
  }
  json out = stats_json(st);
  out["j"] = spin_str(spec.j.twice());
  out["n"] = n;
  out["n_A"] = n_a;
  out["seed"] = seed;
  out["subspace"] = subspace;
  if (o.format == "table") {
    std::printf("mean Z1 = %.10g (std err %.3g), mean Z0 = %.10g\n", st.mean_z1,
                st.std_err_z1, st.mean_z0);
    std::printf("-ln(mean Z1) = %.10g, mean(-ln Z1) = %.10g, mean S = %.10g\n",
                st.s2_of_mean_z1, st.mean_s2, st.mean_s);
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_schur(const NumberOpts& o, int n, long samples, std::uint64_t seed) {
  set_precision(o.digits);
  SchurReport r = schur_check(o.spin(), n, samples, seed);
  json out;
  out["j"] = spin_str(o.spin().twice());
  out["n"] = n;
  out["dim_inv"] = r.dim_inv;
  out["samples"] = r.samples;
  out["max_residual"] = r.max_residual;
  if (o.format == "table")
    std::printf("dim_inv=%ld samples=%ld max residual=%.6g\n", r.dim_inv, r.samples,
                r.max_residual);
  else
    std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_concentration(const NumberOpts& o, int n, int n_a, long samples,
                      std::uint64_t seed, double delta) {
  set_precision(o.digits);
  if (n_a <= 0) n_a = n / 2;
  RandomStateSpec spec;
  spec.j = o.spin();
  spec.n = n;
  spec.n_a = n_a;
  spec.samples = samples;
  spec.seed = seed;
  ConcentrationReport r = concentration_experiment(spec, delta);
  json out;
  out["j"] = spin_str(r.j.twice());
  out["n"] = r.n;
  out["n_A"] = r.n_a;
  out["samples"] = r.samples;
  out["delta"] = r.delta;
  out["Z1_analytic"] = r.z1_analytic;
  out["S2_analytic"] = r.s2_analytic;
  out["tail_Z1"] = r.tail_z1;
  out["tail_S2"] = r.tail_s2;
  out["markov_bound_Z1"] = r.bound_z1;
  out["markov_bound_Z0"] = r.bound_z0;
  if (o.format == "table") {
    std::printf("P(|Z1/Z1bar-1| >= delta/4) = %.6g (bound %.6g)\n", r.tail_z1, r.bound_z1);
    std::printf("P(|S2-S2bar| >= delta)     = %.6g\n", r.tail_s2);
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

struct VerifyState {
  int failures = 0;
  void check(const std::string& name, bool ok) {
    std::printf("%-58s %s\n", name.c_str(), ok ? "ok" : "FAIL");
    if (!ok) ++failures;
  }
};

int cmd_verify() {
  set_precision(60);
  VerifyState v;

  {
    bool ok = true;
    for (int tj = 1; tj <= 6 && ok; ++tj) {
      for (int n = 1; n <= 6 && ok; ++n) {
        DegeneracyTable t = degeneracy_table(Spin::from_twice(Int(tj)), n);
        Int total = t.total_weighted();
        Int expect = 1;
        for (int i = 0; i < n; ++i) expect *= Int(tj + 1);
        ok = total == expect;
      }
    }
    v.check("weighted degeneracy sum equals (2j+1)^n", ok);
  }
  {
    bool ok = true;
    for (int tj = 1; tj <= 5 && ok; ++tj) {
      for (int n = 1; n <= 6 && ok; ++n) {
        Spin j = Spin::from_twice(Int(tj));
        DegeneracyTable t = degeneracy_table(j, n);
        PiecewisePoly p = degeneracy_symbolic(j, n);
        for (Int x = t.two_min; x <= t.two_max && ok; x += 2)
          ok = p.eval_two(x) == t.at_two(x);
      }
    }
    v.check("piecewise closed form matches the recursion", ok);
  }
  {
    bool ok = true;
    for (int tj = 1; tj <= 4 && ok; ++tj) {
      for (int n = 2; n <= 6 && ok; ++n) {
        Spin j = Spin::from_twice(Int(tj));
        Int ref = invariant_dimension(j, n, 1);
        for (int na = 2; na < n && ok; ++na) ok = invariant_dimension(j, n, na) == ref;
      }
    }
    v.check("singlet dimension independent of the bipartition", ok);
  }
  {
    bool ok = true;
    for (int tj = 1; tj <= 4 && ok; ++tj) {
      for (int n = 4; n <= 6 && ok; ++n) {
        Spin j = Spin::from_twice(Int(tj));
        if ((Int(n) * tj) % 2 != 0) continue;
        for (int na = 1; na <= n / 2 && ok; ++na) {
          Z1Result a = z1_bar(j, n, na);
          Z1Result b = z1_bar(j, n, n - na);
          ok = a.exact && b.exact && *a.exact == *b.exact;
          if (ok) {
            Real diff = abs(a.value() - Real(*a.exact));
            ok = diff < pow(Real(10), -40);
          }
        }
      }
    }
    v.check("swap moment: bipartition symmetry and exact = real path", ok);
  }
  {
    Real lo = harmonic(Int(999999), Int(2000000));
    Real hi = harmonic(Int(2000001), Int(1000000));
    Real lo2 = harmonic(Int(999999));
    Real hi2 = harmonic(Int(2000001), Int(3000000));
    v.check("harmonic numbers agree across the asymptotic splice",
            abs(lo - lo2) < pow(Real(10), -45) && abs(hi - hi2) < pow(Real(10), -45));
  }
  {
    bool ok = orthogonality_check(parse_spin("1/2"), parse_spin("1/2")).pass() &&
              orthogonality_check(Spin(2), parse_spin("1/2")).pass() &&
              orthogonality_check(parse_spin("3/2"), Spin(2)).pass();
    v.check("coupling coefficient orthogonality identities", ok);
  }
  {
    bool ok = true;
    for (int tj = 1; tj <= 3 && ok; ++tj) {
      for (int n = 1; n <= 5 && ok; ++n) {
        Spin j = Spin::from_twice(Int(tj));
        DegeneracyTable t = degeneracy_table(j, n);
        for (Int x = t.two_min; x <= t.two_max && ok; x += 2)
          ok = Int(enumerate_trees(j, n, x).size()) == t.at_two(x);
      }
    }
    v.check("coupling chain count equals the degeneracy", ok);
  }
  {
    auto B = invariant_basis(Spin(2), 4);
    Eigen::MatrixXd g = B.vectors.transpose() * B.vectors;
    bool ok = B.dim_inv() == 3 &&
              (g - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12;
    for (long k = 0; k < B.dim_inv() && ok; ++k)
      ok = invariance_residual(Spin(2), 4, B.vectors.col(k)) < 1e-10;
    v.check("singlet basis orthonormal and annihilated by J", ok);
  }
  {
    int census[5] = {0, 0, 0, 0, 0};
    for (const auto& g : PermutationS4::all()) ++census[g.cycle_count()];
    v.check("permutation cycle census {4:1, 3:6, 2:11, 1:6}",
            census[4] == 1 && census[3] == 6 && census[2] == 11 && census[1] == 6);
  }
  {
    v.check("rising factorial values",
            c_factor(Int(2), 2) == 6 && c_factor(Int(2), 4) == 120 && c_factor(Int(1), 4) == 24);
  }

  if (v.failures > 0) {
    std::printf("%d check(s) failed\n", v.failures);
    return 3;
  }
  std::printf("all checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and sampled entanglement statistics of random rotation-invariant tensors"};
  app.require_subcommand(1);

  NumberOpts o_table, o_entropy, o_degen, o_dim, o_fluct, o_sample, o_schur, o_conc;
  int n = 4, n_a = 0, n_min = 4, n_max = 14;
  long samples = 10000;
  std::uint64_t seed = 0;
  double delta = 0.1;
  std::string J_str, json_out, records_path, subspace = "invariant";
  bool symbolic = false;

  auto* t = app.add_subcommand("table", "entropy deficit table across n");
  add_number_opts(t, o_table, "table");
  o_table.d_str = "1e100";
  t->add_option("--n-min", n_min)->default_val(4);
  t->add_option("--n-max", n_max)->default_val(14);
  t->add_option("--json-out", json_out, "write a full-precision JSON sidecar");

  auto* e = app.add_subcommand("entropy", "average swap moment and entropy deficit");
  add_number_opts(e, o_entropy, "json");
  e->add_option("--n", n)->required();
  e->add_option("--na", n_a, "kept legs (default n/2)");

  auto* dg = app.add_subcommand("degeneracy", "coupled-spin multiplicities D(j,n,J)");
  add_number_opts(dg, o_degen, "json");
  dg->add_option("--n", n)->required();
  dg->add_option("--J", J_str, "single total spin (default: all)");
  dg->add_flag("--symbolic", symbolic, "use the piecewise closed form");

  auto* dm = app.add_subcommand("dimension", "singlet subspace dimension");
  add_number_opts(dm, o_dim, "table");
  dm->add_option("--n", n)->required();
  dm->add_option("--na", n_a);

  auto* fl = app.add_subcommand("fluctuation", "four-copy fluctuation bound and tails");
  add_number_opts(fl, o_fluct, "json");
  fl->add_option("--n", n)->required();
  fl->add_option("--na", n_a);
  fl->add_option("--delta", delta)->default_val(0.1);

  auto* sm = app.add_subcommand("sample", "random states over a subspace");
  add_number_opts(sm, o_sample, "json");
  sm->add_option("--n", n)->required();
  sm->add_option("--na", n_a);
  sm->add_option("--samples", samples)->default_val(10000);
  sm->add_option("--seed", seed)->default_val(0);
  sm->add_option("--subspace", subspace)->check(CLI::IsMember({"invariant", "full"}));
  sm->add_option("--records", records_path, "per-sample CSV path");

  auto* sc = app.add_subcommand("schur", "pair-moment residual against (1+swap)/(dim^2+dim)");
  add_number_opts(sc, o_schur, "json");
  sc->add_option("--n", n)->required();
  sc->add_option("--samples", samples)->default_val(10000);
  sc->add_option("--seed", seed)->default_val(0);

  auto* cc = app.add_subcommand("concentration", "empirical tails against Markov bounds");
  add_number_opts(cc, o_conc, "json");
  cc->add_option("--n", n)->required();
  cc->add_option("--na", n_a);
  cc->add_option("--samples", samples)->default_val(10000);
  cc->add_option("--seed", seed)->default_val(0);
  cc->add_option("--delta", delta)->default_val(0.5);

  auto* vf = app.add_subcommand("verify", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (t->count("--j") > 0) o_table.d_str.clear();
    if (t->parsed()) return cmd_table(o_table, n_min, n_max, json_out);
    if (e->parsed()) return cmd_entropy(o_entropy, n, n_a);
    if (dg->parsed()) return cmd_degeneracy(o_degen, n, J_str, symbolic);
    if (dm->parsed()) return cmd_dimension(o_dim, n, n_a);
    if (fl->parsed()) return cmd_fluctuation(o_fluct, n, n_a, delta);
    if (sm->parsed()) return cmd_sample(o_sample, n, n_a, samples, seed, subspace, records_path);
    if (sc->parsed()) return cmd_schur(o_schur, n, samples, seed);
    if (cc->parsed()) return cmd_concentration(o_conc, n, n_a, samples, seed, delta);
    if (vf->parsed()) return cmd_verify();
  } catch (const guard_error& err) {
    std::cerr << "error (infeasible): " << err.what() << "\n";
    return 2;
  } catch (const std::domain_error& err) {
    std::cerr << "error (infeasible): " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error (invalid request): " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
