#include "campaign.hpp"

#include "awq/lattice.hpp"
#include "awq/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "report.hpp"

namespace awq::cli {

namespace {

using KT = KeyType;

const std::vector<std::string> kCommands = {
    "verify-ybe",    "verify-rll", "verify-aw",           "verify-re",     "verify-dual-re", "verify-boundary-aw",
    "verify-charges", "asep-solve", "asep-oracle-compare", "xxz-spectrum", "polytable"};

const char* const kRateSetsDoc =
    "number of seeded rate sets: q uniform in [0.2, 0.8]; gamma, delta uniform in [0.02, 0.3]; alpha (beta) uniform in "
    "[0.05, 0.3](1 - q) or [1, 2], alternating over sets 0-3 so that |a| and |b| fall on both sides of 1, random "
    "choice afterwards";

const std::vector<std::string> kVariants = {"printed", "k21-rescaled", "k21-rho-mirrored", "k21-rescaled-swap"};

std::vector<KeySpec> with_common(std::vector<KeySpec> keys) {
  keys.insert(keys.begin(), {{"seed", KT::Seed, 1, "seed of the 64-bit Mersenne twister", {}},
                             {"tol", KT::Number, nullptr, "overrides the default tolerances of the primary checks", {}}});
  return keys;
}

const std::map<std::string, std::vector<KeySpec>>& key_tables() {
  static const std::map<std::string, std::vector<KeySpec>> t = {
      {"verify-ybe",
       with_common({{"q_values", KT::NumberArray, {0.3, 0.5, 0.7}, "deformation parameters in (0,1)", {}},
                    {"grid_size", KT::Integer, 10, "points per axis of the log-spaced spectral grid", {}},
                    {"z_min", KT::Number, 0.1, "lower end of the spectral grid", {}},
                    {"z_max", KT::Number, 10.0, "upper end of the spectral grid", {}},
                    {"perturb", KT::Number, 0.0, "relative perturbation of the R-matrix (negative control)", {}}})},
      {"verify-rll",
       with_common({{"q", KT::Number, 0.5, "deformation parameter", {}},
                    {"j_twice_values", KT::IntegerArray, {1, 2, 3}, "twice the spins of the quantum space", {}},
                    {"samples", KT::Integer, 20, "random spectral pairs, log-uniform in [0.2, 5]", {}}})},
      {"verify-aw",
       with_common({{"q", KT::Number, 0.5, "deformation parameter", {}},
                    {"dims", KT::IntegerArray, {2, 3, 4}, "dimensions of the evaluation representations", {}},
                    {"samples", KT::Integer, 10, "random coideal parameters, uniform in [-1, 1]", {}},
                    {"nu", KT::Number, 1.0, "evaluation parameter", {}},
                    {"constants", KT::Enum, "printed", "omega formula", {"printed", "corrected"}}})},
      {"verify-re",
       with_common({{"q", KT::Number, 0.5, "deformation parameter", {}},
                    {"dims", KT::IntegerArray, {2, 3, 4}, "dimensions of the exact pairs", {}},
                    {"samples", KT::Integer, 10, "random coideal parameters and spectral pairs", {}},
                    {"basic_N", KT::Integer, 40, "truncation of the basic representation", {}},
                    {"basic_samples", KT::Integer, 3, "spectral pairs on the basic representation", {}},
                    {"basic_params", KT::ComplexArray, {0.3, 0.4, 0.5, 0.6}, "a, b, c, d for the generic class", {}},
                    {"basic_c", KT::Number, 0.45, "c = -d in the eta-free basic class (a = -b = q^{1/2})", {}},
                    {"variant", KT::Enum, "printed", "boundary matrix form", kVariants},
                    {"coideal_class", KT::Enum, "generic", "generic, or k = k* = 0 with eta-free basic parameters",
                     {"generic", "eta-free"}},
                    {"negative_shift", KT::Number, 1e-3, "relative omega perturbation of the negative control", {}}})},
      {"verify-dual-re",
       with_common({{"q", KT::Number, 0.5, "deformation parameter", {}},
                    {"dims", KT::IntegerArray, {2, 3, 4}, "dimensions of the exact pairs", {}},
                    {"samples", KT::Integer, 10, "random coideal parameters and spectral pairs", {}},
                    {"basic_N", KT::Integer, 40, "truncation of the basic representation", {}},
                    {"basic_samples", KT::Integer, 3, "spectral pairs on the basic representation", {}},
                    {"basic_params", KT::ComplexArray, {0.3, 0.4, 0.5, 0.6}, "a, b, c, d for the generic class", {}},
                    {"basic_c", KT::Number, 0.45, "c = -d in the eta-free basic class (a = -b = q^{1/2})", {}},
                    {"variant", KT::Enum, "printed", "boundary matrix form", kVariants},
                    {"form", KT::Enum, "printed", "dual equation form", {"printed", "unshifted"}},
                    {"coideal_class", KT::Enum, "generic", "generic, or k = k* = 0 with eta-free basic parameters",
                     {"generic", "eta-free"}},
                    {"negative_shift", KT::Number, 1e-3, "relative omega perturbation of the negative control", {}}})},
      {"verify-boundary-aw",
       with_common({{"rate_sets", KT::Integer, 5, kRateSetsDoc, {}},
                    {"j_twice_values", KT::IntegerArray, {1, 2}, "twice the spins of the representation", {}},
                    {"constants", KT::Enum, "derived", "structure constants checked", {"derived", "printed"}}})},
      {"verify-charges",
       with_common({{"rate_sets", KT::Integer, 5, kRateSetsDoc, {}},
                    {"L_min", KT::Integer, 2, "smallest chain", {}},
                    {"L_max", KT::Integer, 6, "largest chain", {}},
                    {"pairing", KT::Enum, "printed", "Hamiltonian paired with each charge", {"printed", "audited"}}})},
      {"asep-solve",
       with_common({{"rates", KT::Rates, {{"alpha", 0.7}, {"beta", 0.4}, {"gamma", 0.2}, {"delta", 0.1}}, "boundary rates", {}},
                    {"q", KT::Number, 0.3, "left hopping rate", {}},
                    {"L", KT::Integer, 6, "lattice length", {}},
                    {"N", KT::Integer, -1, "truncation, -1 for L + 2", {}}})},
      {"asep-oracle-compare",
       with_common({{"rate_sets", KT::Integer, 5, kRateSetsDoc, {}},
                    {"L_min", KT::Integer, 2, "smallest lattice", {}},
                    {"L_max", KT::Integer, 8, "largest lattice", {}}})},
      {"xxz-spectrum",
       with_common({{"rate_sets", KT::Integer, 3, kRateSetsDoc, {}},
                    {"L_min", KT::Integer, 2, "smallest chain", {}},
                    {"L_max", KT::Integer, 6, "largest chain", {}},
                    {"mu_values", KT::NumberArray, {1.0, 0.5, 2.0}, "boundary gauge parameters, first is the reference", {}},
                    {"form", KT::Enum, "printed", "Hamiltonian form", {"printed", "audited"}}})},
      {"polytable",
       with_common({{"params", KT::ComplexArray, {0.3, 0.4, 0.5, 0.6}, "a, b, c, d; each a number or [re, im]", {}},
                    {"q", KT::Number, 0.5, "deformation parameter", {}},
                    {"n_max", KT::Integer, 5, "largest degree", {}},
                    {"x_grid", KT::NumberArray, {-1.5, -0.5, 0.5, 1.5}, "evaluation points", {}}})},
  };
  return t;
}

bool is_complex_entry(const json& e) {
  return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number());
}

void check_type(const KeySpec& k, const json& v) {
  auto fail = [&](const std::string& what) {
    throw ConfigError("parameter '" + k.name + "': expected " + what + ", got " + v.dump());
  };
  switch (k.type) {
    case KT::Number:
      if (!v.is_number() && !(v.is_null() && k.default_value.is_null())) fail("a number");
      break;
    case KT::Integer:
      if (!v.is_number_integer()) fail("an integer");
      break;
    case KT::Seed:
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) fail("a nonnegative integer");
      break;
    case KT::NumberArray:
      if (!v.is_array() || v.empty()) fail("a nonempty array of numbers");
      for (const auto& e : v)
        if (!e.is_number()) fail("a nonempty array of numbers");
      break;
    case KT::IntegerArray:
      if (!v.is_array() || v.empty()) fail("a nonempty array of integers");
      for (const auto& e : v)
        if (!e.is_number_integer()) fail("a nonempty array of integers");
      break;
    case KT::Enum:
      if (!v.is_string() || std::find(k.options.begin(), k.options.end(), v.get<std::string>()) == k.options.end())
        fail("one of the listed options");
      break;
    case KT::Rates: {
      if (!v.is_object()) fail("an object with alpha, beta, gamma, delta");
      const std::set<std::string> want = {"alpha", "beta", "gamma", "delta"};
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!want.count(it.key())) throw ConfigError("parameter 'rates': unknown key '" + it.key() + "'");
        if (!it.value().is_number()) fail("numeric rates");
      }
      for (const auto& w : want)
        if (!v.contains(w)) throw ConfigError("parameter 'rates': missing '" + w + "'");
      break;
    }
    case KT::ComplexArray:
      if (!v.is_array() || v.empty()) fail("a nonempty array of numbers or [re, im] pairs");
      for (const auto& e : v)
        if (!is_complex_entry(e)) fail("a nonempty array of numbers or [re, im] pairs");
      break;
  }
}

cplx to_cplx(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  return {e[0].get<double>(), e[1].get<double>()};
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<int> ints(const json& a) { return a.get<std::vector<int>>(); }
std::vector<double> nums(const json& a) { return a.get<std::vector<double>>(); }

class Checks {
 public:
  void check(const std::string& name, json inputs, double value, double tol, bool above = false) {
    const bool ok = std::isfinite(value) && (above ? value > tol : value < tol);
    pass_ = pass_ && ok;
    json rec;
    rec["name"] = name;
    rec["inputs"] = std::move(inputs);
    rec["value"] = value;
    rec["tolerance"] = tol;
    rec["relation"] = above ? "value > tolerance" : "value < tolerance";
    rec["pass"] = ok;
    arr_.push_back(std::move(rec));
  }
  void info(const std::string& name, json inputs, json value) {
    json rec;
    rec["name"] = name;
    rec["inputs"] = std::move(inputs);
    rec["value"] = std::move(value);
    rec["informational"] = true;
    arr_.push_back(std::move(rec));
  }
  bool pass() const { return pass_; }
  const json& records() const { return arr_; }
  int count() const {
    int n = 0;
    for (const auto& r : arr_) n += r.contains("pass");
    return n;
  }
  int failed() const {
    int n = 0;
    for (const auto& r : arr_) n += r.contains("pass") && !r["pass"].get<bool>();
    return n;
  }

 private:
  json arr_ = json::array();
  bool pass_ = true;
};

struct Ctx {
  json p;
  RunOptions opts;
  std::uint64_t seed;
  double tol(double dflt) const {
    if (opts.tol) return *opts.tol;
    if (!p["tol"].is_null()) return p["tol"].get<double>();
    return dflt;
  }
};

KVariant parse_variant(const std::string& s) {
  if (s == "k21-rescaled") return KVariant::K21Rescaled;
  if (s == "k21-rho-mirrored") return KVariant::K21RhoMirrored;
  if (s == "k21-rescaled-swap") return KVariant::K21RescaledSwap;
  return KVariant::Printed;
}

CoidealParams<cplx> random_coideal(Rng& rng, bool eta_free) {
  CoidealParams<cplx> cp;
  cp.u = rng.uniform(-1, 1);
  cp.u_star = rng.uniform(-1, 1);
  cp.v = rng.uniform(-1, 1);
  cp.v_star = rng.uniform(-1, 1);
  cp.k = rng.uniform(-1, 1);
  cp.k_star = rng.uniform(-1, 1);
  if (eta_free) cp.k = cp.k_star = 0.0;
  return cp;
}

json rates_json(const RateSet& r) {
  return {{"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}, {"delta", r.delta}, {"q", r.q}};
}

ASEPRates to_rates(const RateSet& r) { return ASEPRates(r.alpha, r.beta, r.gamma, r.delta, r.q); }

// ---------------------------------------------------------------------------

void run_ybe(const Ctx& c, Checks& out) {
  const int n = c.p["grid_size"];
  const double lo = c.p["z_min"], hi = c.p["z_max"], pert = c.p["perturb"];
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw ConfigError("verify-ybe: need grid_size >= 2 and 0 < z_min < z_max");
  for (double qv : nums(c.p["q_values"])) {
    const QParams q(qv);
    double worst = 0, z1w = 0, z2w = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double z1 = lo * std::pow(hi / lo, double(i) / (n - 1)), z2 = lo * std::pow(hi / lo, double(j) / (n - 1));
        const double r = ybe_residual<cplx>(z1, z2, q, pert);
        if (!(r <= worst)) worst = r, z1w = z1, z2w = z2;
      }
    out.check("ybe_residual", {{"q", qv}, {"grid", n}, {"worst_z1", z1w}, {"worst_z2", z2w}}, worst, c.tol(1e-11));
  }
}

void run_rll(const Ctx& c, Checks& out) {
  const QParams q(c.p["q"].get<double>());
  Rng rng(c.seed);
  for (int jt : ints(c.p["j_twice_values"])) {
    const SpinRep<cplx> rep = build_spin_rep<cplx>(jt, q);
    double worst = 0;
    for (int s = 0; s < c.p["samples"].get<int>(); ++s) {
      const double z1 = rng.log_uniform(0.2, 5), z2 = rng.log_uniform(0.2, 5);
      worst = std::max(worst, rll_residual<cplx>(z1, z2, rep));
    }
    out.check("rll_residual", {{"q", q.q}, {"j_twice", jt}, {"samples", c.p["samples"]}}, worst, c.tol(1e-11));
  }
}

void run_aw(const Ctx& c, Checks& out) {
  const QParams q(c.p["q"].get<double>());
  const cplx nu = c.p["nu"].get<double>();
  const bool printed = c.p["constants"] == "printed";
  const int samples = c.p["samples"];
  const double s2 = q.s() * q.s();
  Rng rng(c.seed);
  for (int dim : ints(c.p["dims"])) {
    const ChevalleyRep<cplx> ev = build_evaluation_rep<cplx>(nu, build_spin_rep<cplx>(dim - 1, q));
    std::vector<CoidealParams<cplx>> cps;
    std::vector<TridiagonalPair<cplx>> pairs;
    std::vector<FitResult<cplx>> fits;
    for (int s = 0; s < samples; ++s) {
      cps.push_back(random_coideal(rng, false));
      pairs.push_back(build_coideal_ops(ev, cps.back()));
      fits.push_back(fit_structure_constants(pairs.back()));
    }
    // one l per representation: omega = sign s^2 (k k* + l S)
    const double sign = printed ? 1.0 : -1.0;
    cplx num = 0;
    double den = 0;
    for (int s = 0; s < samples; ++s) {
      const CoidealParams<cplx> a = absorb_nu(cps[s], nu);
      const cplx S = a.u * a.u_star * q.sqrt_q + a.v_star * a.v * q.inv_sqrt_q;
      num += std::conj(S) * (fits[s].s.omega / (sign * s2) - a.k * a.k_star);
      den += std::norm(S);
    }
    if (den == 0) throw DegenerateFitError("verify-aw: cannot fit l, all S vanish");
    const cplx l = num / den;
    double worst = 0, rho_mis = 0;
    for (int s = 0; s < samples; ++s) {
      const CoidealParams<cplx> a = absorb_nu(cps[s], nu);
      const AWStructure<cplx> st = printed ? structure_constants_prop1<cplx>(a, l, q)
                                           : structure_constants_prop1_corrected<cplx>(a, l, q);
      worst = std::max(worst, aw_residual(pairs[s], st).max());
      rho_mis = std::max({rho_mis, std::abs(fits[s].s.rho - st.rho) / std::max(1.0, std::abs(st.rho)),
                          std::abs(fits[s].s.rho_star - st.rho_star) / std::max(1.0, std::abs(st.rho_star))});
    }
    const json in = {{"q", q.q}, {"dim", dim}, {"samples", samples}, {"constants", c.p["constants"]}};
    out.check("aw_residual", in, worst, c.tol(1e-11));
    out.check("rho_match", in, rho_mis, c.tol(1e-9));
    out.info("l_fitted", in, {{"fitted", cj(l)}, {"casimir_closed_form", l_v0_closed_form(dim - 1, q)}});
  }
  for (auto [d1, d2] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const ChevalleyRep<cplx> r1 = build_evaluation_rep<cplx>(nu, build_spin_rep<cplx>(d1 - 1, q));
    const ChevalleyRep<cplx> r2 = build_evaluation_rep<cplx>(nu, build_spin_rep<cplx>(d2 - 1, q));
    double worst = 0;
    for (int s = 0; s < samples; ++s) worst = std::max(worst, coproduct_coideal_residual(r1, r2, random_coideal(rng, false)));
    out.check("coproduct_coideal_residual", {{"q", q.q}, {"dims", {d1, d2}}, {"samples", samples}}, worst, c.tol(1e-12));
  }
}

void run_re(const Ctx& c, Checks& out, bool dual) {
  const QParams q(c.p["q"].get<double>());
  const KVariant variant = parse_variant(c.p["variant"]);
  const bool eta_free = c.p["coideal_class"] == "eta-free";
  const DualForm form = dual && c.p["form"] == "unshifted" ? DualForm::Unshifted : DualForm::Printed;
  const double shift = c.p["negative_shift"];
  Rng rng(c.seed);
  auto residual = [&](cplx z1, cplx z2, const TridiagonalPair<cplx>& pair, const AWStructure<cplx>& s) {
    return dual ? dual_reflection_residual<cplx>(z1, z2, pair, s, variant, form)
                : reflection_residual<cplx>(z1, z2, pair, s, variant);
  };
  const std::string name = dual ? "dual_reflection_residual" : "reflection_residual";
  json conv = {{"variant", to_string(variant)}, {"coideal_class", c.p["coideal_class"]}};
  if (dual) conv["form"] = to_string(form);

  for (int dim : ints(c.p["dims"])) {
    const ChevalleyRep<cplx> ev = build_evaluation_rep<cplx>(cplx(1.0), build_spin_rep<cplx>(dim - 1, q));
    const double l = l_v0_closed_form(dim - 1, q);
    double worst = 0, control = 0;
    for (int s = 0; s < c.p["samples"].get<int>(); ++s) {
      const CoidealParams<cplx> cp = random_coideal(rng, eta_free);
      const auto [pair, st] = equalize_rho(build_coideal_ops(ev, cp), structure_constants_prop1_corrected<cplx>(cp, l, q));
      const cplx z1 = rng.log_uniform(0.3, 3), z2 = rng.log_uniform(0.3, 3);
      worst = std::max(worst, residual(z1, z2, pair, st));
      if (s == 0) {
        AWStructure<cplx> bad = st;
        bad.omega += shift * (1.0 + std::abs(st.omega));
        control = residual(z1, z2, pair, bad);
      }
    }
    json in = {{"q", q.q}, {"dim", dim}, {"samples", c.p["samples"]}};
    in.update(conv);
    out.check(name, in, worst, c.tol(1e-11));
    out.check(name + "_negative_control", in, control, 1e-6, true);
  }

  if (!eta_free && c.p["basic_params"].size() != 4) throw ConfigError("basic_params: four entries required");
  AWParams<cplx> bp = eta_free ? AWParams<cplx>(q.sqrt_q, -q.sqrt_q, c.p["basic_c"].get<double>(),
                                                -c.p["basic_c"].get<double>(), q)
                               : AWParams<cplx>(to_cplx(c.p["basic_params"][0]), to_cplx(c.p["basic_params"][1]),
                                                to_cplx(c.p["basic_params"][2]), to_cplx(c.p["basic_params"][3]), q);
  const int N = c.p["basic_N"];
  const auto [pair, st] = equalize_rho(build_basic_representation(N, bp), basic_structure_constants(bp));
  double worst = 0;
  for (int s = 0; s < c.p["basic_samples"].get<int>(); ++s) {
    const cplx z1 = rng.log_uniform(0.3, 3), z2 = rng.log_uniform(0.3, 3);
    worst = std::max(worst, residual(z1, z2, pair, st));
  }
  json in = {{"q", q.q}, {"N", N}, {"params", {cj(bp.a), cj(bp.b), cj(bp.c), cj(bp.d)}}, {"samples", c.p["basic_samples"]}};
  in.update(conv);
  out.check(name + "_basic", in, worst, c.tol(1e-9));
}

void run_boundary_aw(const Ctx& c, Checks& out) {
  Rng rng(c.seed);
  const bool derived = c.p["constants"] == "derived";
  const std::vector<RateSet> sets = random_rate_sets(rng, c.p["rate_sets"]);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const ASEPRates r = to_rates(sets[k]);
    for (int jt : ints(c.p["j_twice_values"])) {
      const SpinRep<cplx> rep = build_spin_rep<cplx>(jt, r.q);
      const TridiagonalPair<cplx> pair = boundary_pair_finite(r, rep);
      const cplx Q = casimir_value(rep, CasimirForm::Central);
      const AWStructure<cplx> printed = boundary_aw_constants(r, Q);
      const AWStructure<cplx> st = derived ? boundary_aw_constants_derived(r, Q) : printed;
      const FitResult<cplx> fit = fit_structure_constants(pair);
      const json in = {{"set", k}, {"rates", rates_json(sets[k])}, {"j_twice", jt}, {"constants", c.p["constants"]}};
      out.check("boundary_aw_residual", in, aw_residual(pair, st).max(), c.tol(1e-10));
      out.check("boundary_fit_residual", in, fit.residual, c.tol(1e-10));
      auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      const double mismatch = std::max({rel(printed.rho, fit.s.rho), rel(printed.rho_star, fit.s.rho_star),
                                        rel(printed.omega, fit.s.omega), rel(printed.eta, fit.s.eta),
                                        rel(printed.eta_star, fit.s.eta_star)});
      if (mismatch > 1e-8)
        out.info("printed_constant_mismatch", in,
                 {{"max_relative_difference", mismatch},
                  {"printed", {{"rho", cj(printed.rho)}, {"rho_star", cj(printed.rho_star)}, {"omega", cj(printed.omega)},
                               {"eta", cj(printed.eta)}, {"eta_star", cj(printed.eta_star)}}},
                  {"fitted", {{"rho", cj(fit.s.rho)}, {"rho_star", cj(fit.s.rho_star)}, {"omega", cj(fit.s.omega)},
                              {"eta", cj(fit.s.eta)}, {"eta_star", cj(fit.s.eta_star)}}}});
    }
  }
}

void run_charges(const Ctx& c, Checks& out) {
  Rng rng(c.seed);
  const bool audited = c.p["pairing"] == "audited";
  const ChargePairing pairing = audited ? ChargePairing::Audited : ChargePairing::Printed;
  const std::vector<RateSet> sets = random_rate_sets(rng, c.p["rate_sets"]);
  const int L0 = c.p["L_min"], L1 = c.p["L_max"];
  for (int L = L0; L <= L1; ++L) {
    for (ChargeSide side : {ChargeSide::Left, ChargeSide::Right}) {
      double worst = 0;
      for (const RateSet& s : sets) worst = std::max(worst, conserved_charge_residual(to_rates(s), L, side, pairing));
      out.check(side == ChargeSide::Left ? "left_charge_residual" : "right_charge_residual",
                {{"L", L}, {"rate_sets", sets.size()}, {"pairing", c.p["pairing"]}}, worst, c.tol(1e-11));
    }
    double worst = 0;
    for (const RateSet& s : sets) worst = std::max(worst, gauge_identity_residual(QParams(s.q), L, audited));
    out.check("gauge_identity_residual", {{"L", L}, {"h_sign_flipped", audited}}, worst, c.tol(1e-12));
  }
}

void run_asep_solve(const Ctx& c, Checks& out, json& result) {
  const json& rr = c.p["rates"];
  const ASEPRates r = [&] {
    try {
      return ASEPRates(rr["alpha"], rr["beta"], rr["gamma"], rr["delta"], c.p["q"]);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("asep-solve: ") + e.what());
    }
  }();
  const int L = c.p["L"], N = c.p["N"];
  const MPAState<cplx> m = build_mpa<cplx>(r, L, N);
  const MPAInvariants inv = mpa_invariants(m);
  const JacobiCrosscheck jc = mpa_jacobi_crosscheck(m);
  const Observables o = observables(m, L);
  const json in = {{"L", L}, {"N", m.N}};
  out.check("mpa_bulk_relation", in, inv.bulk, c.tol(1e-10));
  out.check("mpa_left_boundary", in, inv.left, c.tol(1e-10));
  out.check("mpa_right_boundary", in, inv.right, c.tol(1e-10));
  out.check("jacobi_diagonal", in, jc.diagonal, c.tol(1e-9));
  out.check("jacobi_offdiagonal", in, jc.offdiagonal, c.tol(1e-9));
  double spread = 0;
  for (double b : o.bond_current) spread = std::max(spread, std::abs(b - o.current));
  out.check("bond_current_spread", in, spread, c.tol(1e-9));
  json two = json::array();
  for (const auto& [ij, v] : o.two_point) two.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v}});
  result = {{"aw_params", {cj(m.params.a), cj(m.params.b), cj(m.params.c), cj(m.params.d)}},
            {"x0", m.x0},
            {"Z_L", o.Z_L},
            {"current", o.current},
            {"density", o.density},
            {"bond_current", o.bond_current},
            {"two_point", two}};
}

void run_oracle_compare(const Ctx& c, Checks& out) {
  Rng rng(c.seed);
  const std::vector<RateSet> sets = random_rate_sets(rng, c.p["rate_sets"]);
  const int L0 = c.p["L_min"], L1 = c.p["L_max"];
  bool a_big = false, a_small = false, b_big = false, b_small = false;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const ASEPRates r = to_rates(sets[k]);
    const AWParams<cplx> p = kappa_map(r);
    a_big |= std::abs(p.a) > 1, a_small |= std::abs(p.a) < 1, b_big |= std::abs(p.b) > 1, b_small |= std::abs(p.b) < 1;
    const MPAState<cplx> m = build_mpa<cplx>(r, L1);
    for (int L = L0; L <= L1; ++L) {
      const std::vector<double> pm = mpa_distribution(m, L);
      const MarkovGenerator g = build_generator(r, L);
      const StationaryDistribution sd = stationary_distribution(g);
      double tv = 0;
      for (std::size_t s = 0; s < pm.size(); ++s) tv += std::abs(pm[s] - sd.probs(s));
      tv *= 0.5;
      const OracleObservables oo = oracle_observables(sd, g);
      const Observables mo = observables(m, L);
      const json in = {{"set", k}, {"rates", rates_json(sets[k])}, {"abs_a", std::abs(p.a)}, {"abs_b", std::abs(p.b)}, {"L", L}};
      out.check("total_variation", in, tv, c.tol(1e-8));
      out.check("current_difference", in, std::abs(mo.current - oo.obs.current), c.tol(1e-8));
    }
  }
  if (sets.size() >= 4)
    out.check("parameter_span", {{"a_above_1", a_big}, {"a_below_1", a_small}, {"b_above_1", b_big}, {"b_below_1", b_small}},
              (a_big && a_small && b_big && b_small) ? 0.0 : 1.0, 0.5);
}

VecC eigenvalues_of(const MatC& H) { return balanced_eigenvalues(H); }

void run_xxz(const Ctx& c, Checks& out) {
  Rng rng(c.seed);
  const XXZForm form = c.p["form"] == "audited" ? XXZForm::Audited : XXZForm::Printed;
  const std::vector<RateSet> sets = random_rate_sets(rng, c.p["rate_sets"]);
  const std::vector<double> mus = nums(c.p["mu_values"]);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const ASEPRates r = to_rates(sets[k]);
    for (int L = c.p["L_min"].get<int>(); L <= c.p["L_max"].get<int>(); ++L) {
      const MarkovGenerator g = build_generator(r, L);
      const XXZModel ref = build_xxz(r, L, mus.front(), form);
      const json in = {{"set", k}, {"rates", rates_json(sets[k])}, {"L", L}, {"form", c.p["form"]}};
      out.check("spectral_distance", in, spectrum_compare(g, ref), c.tol(1e-8));
      const VecC e0 = eigenvalues_of(ref.H);
      double spread = 0;
      for (double mu : mus) spread = std::max(spread, bottleneck_distance(e0, eigenvalues_of(build_xxz(r, L, mu, form).H)));
      out.check("mu_independence", in, spread, c.tol(1e-10));
    }
  }
}

std::string run_polytable(const Ctx& c) {
  const json& pa = c.p["params"];
  if (pa.size() != 4) throw ConfigError("polytable: params needs four entries");
  const AWParams<cplx> p(to_cplx(pa[0]), to_cplx(pa[1]), to_cplx(pa[2]), to_cplx(pa[3]), QParams(c.p["q"].get<double>()));
  const std::vector<double> xs = nums(c.p["x_grid"]);
  const int n_max = c.p["n_max"];
  if (n_max < 0) throw ConfigError("polytable: n_max must be nonnegative");
  std::ostringstream os;
  os << "n";
  for (const char* col : {"a_n", "b_n", "c_n", "lambda_star_n", "h_n"}) os << ',' << col << "_re," << col << "_im";
  for (double x : xs) os << ",p_n(" << format_float(x) << ")_re,p_n(" << format_float(x) << ")_im";
  os << '\n';
  auto put = [&](cplx z) { os << ',' << format_float(z.real()) << ',' << format_float(z.imag()); };
  for (int n = 0; n <= n_max; ++n) {
    const RecurrenceCoeffs<cplx> rc = recurrence_coeffs(n, p);
    os << n;
    put(rc.a_n);
    put(rc.b_n);
    put(rc.c_n);
    put(dual_eigenvalue(n, p));
    put(norm_h(n, p));
    for (double x : xs) put(aw_poly_eval(n, cplx(x), p));
    os << '\n';
  }
  return os.str();
}

}  // namespace

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

std::vector<RateSet> random_rate_sets(Rng& rng, int count) {
  if (count < 1) throw ConfigError("rate_sets must be positive");
  std::vector<RateSet> out;
  for (int k = 0; k < count; ++k) {
    RateSet r;
    r.q = rng.uniform(0.2, 0.8);
    const bool pattern = k < 4;
    const bool small_a = pattern ? (k & 1) == 0 : rng.uniform(0, 1) < 0.5;
    const bool small_b = pattern ? (k & 2) == 0 : rng.uniform(0, 1) < 0.5;
    r.alpha = small_a ? rng.uniform(0.05, 0.3) * (1 - r.q) : rng.uniform(1.0, 2.0);
    r.beta = small_b ? rng.uniform(0.05, 0.3) * (1 - r.q) : rng.uniform(1.0, 2.0);
    r.gamma = rng.uniform(0.02, 0.3);
    r.delta = rng.uniform(0.02, 0.3);
    out.push_back(r);
  }
  return out;
}

const std::vector<std::string>& commands() { return kCommands; }

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto& t = key_tables();
  const auto it = t.find(command);
  if (it == t.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

std::string to_string(KeyType t) {
  switch (t) {
    case KT::Number: return "number";
    case KT::Integer: return "integer";
    case KT::Seed: return "seed";
    case KT::NumberArray: return "number-array";
    case KT::IntegerArray: return "integer-array";
    case KT::Enum: return "enum";
    case KT::Rates: return "rates";
    case KT::ComplexArray: return "complex-array";
  }
  return "?";
}

json validate_config(const std::string& command, const json& config) {
  const std::vector<KeySpec>& keys = command_keys(command);
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = config.begin(); it != config.end(); ++it)
    if (it.key() != "command" && it.key() != "parameters") throw ConfigError("unknown top-level key '" + it.key() + "'");
  if (config.contains("command") && config["command"] != command)
    throw ConfigError("config command " + config["command"].dump() + " does not match '" + command + "'");
  const json params = config.value("parameters", json::object());
  if (!params.is_object()) throw ConfigError("'parameters' must be an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == it.key(); });
    if (!known) throw ConfigError("unknown parameter '" + it.key() + "' for " + command);
  }
  json out = json::object();
  for (const KeySpec& k : keys) {
    const json v = params.contains(k.name) ? params[k.name] : k.default_value;
    check_type(k, v);
    out[k.name] = v;
  }
  return out;
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

Report run(const std::string& command, const json& config, const RunOptions& opts) {
  Ctx c{validate_config(command, config), opts, 0};
  c.seed = opts.seed ? *opts.seed : c.p["seed"].get<std::uint64_t>();
  c.p["seed"] = c.seed;
  if (opts.tol) c.p["tol"] = *opts.tol;

  Report rep;
  if (command == "polytable") {
    rep.csv = run_polytable(c);
    rep.doc = {{"command", command}, {"parameters", c.p}};
    return rep;
  }
  Checks checks;
  json result;
  if (command == "verify-ybe") run_ybe(c, checks);
  else if (command == "verify-rll") run_rll(c, checks);
  else if (command == "verify-aw") run_aw(c, checks);
  else if (command == "verify-re") run_re(c, checks, false);
  else if (command == "verify-dual-re") run_re(c, checks, true);
  else if (command == "verify-boundary-aw") run_boundary_aw(c, checks);
  else if (command == "verify-charges") run_charges(c, checks);
  else if (command == "asep-solve") run_asep_solve(c, checks, result);
  else if (command == "asep-oracle-compare") run_oracle_compare(c, checks);
  else if (command == "xxz-spectrum") run_xxz(c, checks);

  json& d = rep.doc;
  d["command"] = command;
  d["parameters"] = c.p;
  d["environment"] = {{"tool", "awq_cli"}, {"version", kVersion}, {"seed", c.seed}};
  d["conventions"] = {{"casimir", "centrality-corrected"},
                      {"serre_sign", "minus"},
                      {"coproduct", "E (x) q^{-H/2} + q^{H/2} (x) E"},
                      {"mpa_construction", "direct tridiagonal recursion"},
                      {"basis", "site 1 = most significant bit, occupied = spin down"}};
  if (c.p.contains("variant")) d["conventions"]["k_matrix_variant"] = c.p["variant"];
  if (c.p.contains("form")) d["conventions"]["form"] = c.p["form"];
  if (c.p.contains("pairing")) d["conventions"]["charge_pairing"] = c.p["pairing"];
  if (!result.is_null()) d["result"] = result;
  d["checks"] = checks.records();
  d["summary"] = {{"checks", checks.count()}, {"failed", checks.failed()}, {"pass", checks.pass()}};
  rep.pass = checks.pass();
  return rep;
}

}  // namespace awq::cli
