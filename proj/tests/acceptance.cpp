#include "awq/asep.hpp"
#include "awq/qspecial.hpp"
#include "campaign.hpp"
#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace awq;
using namespace awq::cli;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
  std::vector<std::string> audit;
};

json cfg(const std::string& command, json p = json::object()) { return {{"command", command}, {"parameters", std::move(p)}}; }

std::vector<std::string> g_reports;

Report campaign(const std::string& command, json p = json::object()) {
  Report r = run(command, cfg(command, std::move(p)));
  g_reports.push_back(command + "\n" + serialize(r.doc));
  return r;
}

// Largest value and overall verdict over the checks with the given name.
std::pair<double, bool> worst(const Report& r, const std::string& name) {
  double w = 0;
  bool ok = true;
  int n = 0;
  for (const auto& c : r.doc["checks"]) {
    if (c["name"] != name || !c.contains("pass")) continue;
    ++n;
    w = std::max(w, c["value"].is_null() ? INFINITY : c["value"].get<double>());
    ok = ok && c["pass"].get<bool>();
  }
  return {w, ok && n > 0};
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string line(const std::string& label, const std::pair<double, bool>& w, const std::string& gate) {
  return label + " " + sci(w.first) + (w.second ? " < " : " !< ") + gate;
}

Outcome c1() {
  const auto w = worst(campaign("verify-ybe"), "ybe_residual");
  return {w.second, line("max ybe_residual over 3 q x 10x10 grid", w, "1e-11"), {}};
}

Outcome c2() {
  const auto w = worst(campaign("verify-rll"), "rll_residual");
  return {w.second, line("max rll_residual, spins 1/2, 1, 3/2, 20 pairs", w, "1e-11"), {}};
}

Outcome c3() {
  const Report r = campaign("verify-aw", {{"constants", "printed"}});
  const auto aw = worst(r, "aw_residual"), rho = worst(r, "rho_match");
  Outcome o{aw.second && rho.second,
            line("printed constants, dims 2-4 x 10 params: aw_residual", aw, "1e-11") + "; " +
                line("rho match", rho, "1e-9"),
            {}};
  const Report c = run("verify-aw", cfg("verify-aw", {{"constants", "corrected"}}));
  o.audit.push_back(line("omega = -s^2(kk* + lS): aw_residual", worst(c, "aw_residual"), "1e-11") + "; " +
                    line("rho match", worst(c, "rho_match"), "1e-9"));
  return o;
}

Outcome c4() {
  const Report r = run("verify-aw", cfg("verify-aw"));
  const auto w = worst(r, "coproduct_coideal_residual");
  return {w.second, line("coproduct_coideal_residual on 2x2 and 3x2", w, "1e-12"), {}};
}

Outcome c5() {
  const Report re = campaign("verify-re");
  const Report dre = campaign("verify-dual-re");
  const auto a = worst(re, "reflection_residual"), b = worst(re, "reflection_residual_basic");
  const auto c = worst(re, "reflection_residual_negative_control");
  const auto d = worst(dre, "dual_reflection_residual"), e = worst(dre, "dual_reflection_residual_basic");
  Outcome o{a.second && b.second && c.second && d.second && e.second,
            "printed K: " + line("exact pairs", a, "1e-11") + "; " + line("basic N=40", b, "1e-9") + "; " +
                line("dual exact", d, "1e-11") + "; " + line("dual basic", e, "1e-9") +
                "; negative control " + sci(c.first) + (c.second ? " > 1e-6" : " !> 1e-6"),
            {}};
  for (const std::string v : {"k21-rescaled", "k21-rho-mirrored", "k21-rescaled-swap"}) {
    const Report r = run("verify-re", cfg("verify-re", {{"variant", v}, {"basic_N", 12}}));
    o.audit.push_back("variant " + v + ", generic class: " + line("exact pairs", worst(r, "reflection_residual"), "1e-11"));
  }
  const Report ef = run("verify-re", cfg("verify-re", {{"variant", "k21-rescaled"}, {"coideal_class", "eta-free"}}));
  const Report efd = run("verify-dual-re", cfg("verify-dual-re", {{"variant", "k21-rescaled"}, {"coideal_class", "eta-free"},
                                                                  {"form", "unshifted"}}));
  o.audit.push_back("k21-rescaled, eta = eta* = 0, rho = rho*: " + line("exact", worst(ef, "reflection_residual"), "1e-11") +
                    "; " + line("basic N=40", worst(ef, "reflection_residual_basic"), "1e-9") + "; negative control " +
                    sci(worst(ef, "reflection_residual_negative_control").first));
  o.audit.push_back("dual, unshifted form, same class: " + line("exact", worst(efd, "dual_reflection_residual"), "1e-11") +
                    "; " + line("basic N=40", worst(efd, "dual_reflection_residual_basic"), "1e-9"));
  return o;
}

Outcome c6() {
  const QParams q(0.5);
  const std::vector<AWParams<cplx>> ps = {AWParams<cplx>(0.3, 0.4, 0.5, 0.6, q),
                                          AWParams<cplx>(cplx(0.3, 0.2), cplx(0.3, -0.2), -0.4, 0.1, QParams(0.6))};
  double eig = 0, rec = 0, orth = 0;
  for (const AWParams<cplx>& p : ps) {
    for (int n = 0; n <= 8; ++n) {
      const SymLaurentPoly<cplx> f = aw_poly_laurent(n, p);
      eig = std::max(eig, (apply_D(f, p).coeffs - dual_eigenvalue(n, p) * f.coeffs).norm() / f.coeffs.norm());
    }
    for (int s = 0; s < 10; ++s) {
      const cplx x(-1.9 + 0.38 * s, 0.05 * s);
      for (int n = 0; n <= 20; ++n) {
        const auto rc = recurrence_coeffs(n, p);
        const cplx pn = aw_poly_eval(n, x, p), pn1 = aw_poly_eval(n + 1, x, p);
        const cplx pm = n ? aw_poly_eval(n - 1, x, p) : cplx(0);
        const double sc = std::abs(rc.b_n * pn1) + std::abs(rc.a_n * pn) + std::abs(rc.c_n * pm) + std::abs(x * pn);
        rec = std::max(rec, std::abs(rc.b_n * pn1 + rc.a_n * pn + rc.c_n * pm - x * pn) / sc);
      }
    }
    for (int m = 0; m <= 5; ++m)
      for (int n = 0; n <= 5; ++n) {
        const auto r = orthogonality_check(m, n, p);
        orth = std::max(orth, std::abs(r.integral - (m == n ? r.h_n_ref : cplx(0))) / std::abs(r.h_n_ref));
      }
  }
  const bool ok = eig < 1e-9 && rec < 1e-9 && orth < 1e-6;
  return {ok,
          "D-eigenvalue " + sci(eig) + " (1e-9), recurrence n<=20 " + sci(rec) + " (1e-9), orthogonality m,n<=5 " +
              sci(orth) + " (1e-6)",
          {}};
}

Outcome c7() {
  const Report r = campaign("verify-boundary-aw");
  const auto a = worst(r, "boundary_aw_residual"), f = worst(r, "boundary_fit_residual");
  Outcome o{a.second && f.second,
            "derived constants: " + line("aw_residual, spin 1/2 and 1, 5 rate sets", a, "1e-10") + "; " +
                line("fit residual", f, "1e-10"),
            {}};
  int mism = 0;
  double worst_mism = 0;
  for (const auto& c : r.doc["checks"])
    if (c["name"] == "printed_constant_mismatch") {
      ++mism;
      worst_mism = std::max(worst_mism, c["value"]["max_relative_difference"].get<double>());
    }
  o.audit.push_back("printed constants differ from the fitted ones in " + std::to_string(mism) +
                    " cases, max relative difference " + sci(worst_mism));
  const Report p = run("verify-boundary-aw", cfg("verify-boundary-aw", {{"constants", "printed"}}));
  o.audit.push_back(line("printed constants: aw_residual", worst(p, "boundary_aw_residual"), "1e-10"));
  return o;
}

Outcome c8() {
  const Report r = campaign("asep-oracle-compare");
  const auto tv = worst(r, "total_variation"), j = worst(r, "current_difference"), span = worst(r, "parameter_span");
  return {tv.second && j.second && span.second,
          line("total variation, L=2..8, 5 rate sets", tv, "1e-8") + "; " + line("current", j, "1e-8") +
              (span.second ? "; |a|, |b| on both sides of 1" : "; parameter span incomplete"),
          {}};
}

Outcome c9() {
  const Report r = campaign("verify-charges");
  const auto l = worst(r, "left_charge_residual"), rr = worst(r, "right_charge_residual");
  const auto g = worst(r, "gauge_identity_residual");
  Outcome o{l.second && rr.second && g.second,
            "printed pairing: " + line("left", l, "1e-11") + "; " + line("right", rr, "1e-11") + "; " +
                line("gauge", g, "1e-12"),
            {}};
  const Report a = run("verify-charges", cfg("verify-charges", {{"pairing", "audited"}}));
  o.audit.push_back("both charges against H(-q^{1/2}): " + line("left", worst(a, "left_charge_residual"), "1e-11") + "; " +
                    line("right", worst(a, "right_charge_residual"), "1e-11") + "; " +
                    line("gauge with h -> -h", worst(a, "gauge_identity_residual"), "1e-12"));
  return o;
}

Outcome c10() {
  const Report r = campaign("xxz-spectrum");
  const auto d = worst(r, "spectral_distance"), mu = worst(r, "mu_independence");
  Outcome o{d.second && mu.second,
            "printed model: " + line("spectral distance, L=2..6", d, "1e-8") + "; " + line("mu spread", mu, "1e-10"), {}};
  const Report a = run("xxz-spectrum", cfg("xxz-spectrum", {{"form", "audited"}}));
  o.audit.push_back("H_w/q^{1/2} with q^{+-(L-1)/2} in B_L: " + line("spectral distance", worst(a, "spectral_distance"), "1e-8") +
                    "; " + line("mu spread", worst(a, "mu_independence"), "1e-10"));
  return o;
}

Outcome c11() {
  const std::vector<std::string> first = g_reports;
  std::vector<std::string> second;
  for (const std::string& rep : first) {
    const std::string command = rep.substr(0, rep.find('\n'));
    const json doc = json::parse(rep.substr(rep.find('\n') + 1));
    second.push_back(command + "\n" + serialize(run(command, cfg(command, doc["parameters"])).doc));
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < first.size(); ++i) same += first[i] == second[i];
  const std::string poly1 = *run("polytable", cfg("polytable")).csv, poly2 = *run("polytable", cfg("polytable")).csv;
  const bool ok = same == first.size() && !first.empty() && poly1 == poly2;
  return {ok, std::to_string(same) + "/" + std::to_string(first.size()) + " reports and the polynomial table byte-identical on rerun", {}};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> fn;
    double time_limit;
  };
  const std::vector<Criterion> crit = {
      {1, "Yang-Baxter", c1, 1.0},          {2, "RLL", c2, 5.0},
      {3, "AW coideal constants", c3, 0},   {4, "coideal coproduct", c4, 0},
      {5, "reflection equation", c5, 0},    {6, "basic representation", c6, 0},
      {7, "boundary AW algebra", c7, 0},    {8, "ASEP oracle equivalence", c8, 60.0},
      {9, "conserved charges", c9, 0},      {10, "spectral map", c10, 0},
      {11, "determinism", c11, 0},
  };
  int failed = 0;
  for (const Criterion& c : crit) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && dt >= c.time_limit) {
      o.pass = false;
      o.detail += "; runtime over " + sci(c.time_limit) + " s";
    }
    failed += !o.pass;
    std::printf("%s criterion %2d %-24s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), dt);
    for (const std::string& a : o.audit) std::printf("     audit: %s\n", a.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(crit.size()) - failed, crit.size());
  return failed ? 1 : 0;
}
