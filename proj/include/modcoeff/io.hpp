#pragma once

// CSV and JSON serialization. Big integers are decimal strings, reals are
// scientific strings, and nothing time- or host-dependent is ever written,
// so identical inputs give byte-identical output.

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>

#include "modcoeff/bounds.hpp"
#include "modcoeff/coeff_engine.hpp"
#include "modcoeff/density.hpp"
#include "modcoeff/diophantine.hpp"
#include "modcoeff/real.hpp"

namespace modcoeff::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "modcoeff";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline std::string real_str(const Real& x, int digits = 20) {
  if (mpfr_inf_p(x.get())) return x.sign() < 0 ? "-inf" : "inf";
  return x.sci(digits);
}

struct RunInfo {
  std::string command;
  Json config = Json::object();
  mpfr_prec_t precision = kDefaultPrecision;
  std::uint64_t seed = 0;
};

/// Header fields shared by every JSON report.
inline Json header(const RunInfo& run) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = run.command;
  j["config"] = run.config;
  j["precision_bits"] = run.precision;
  j["seed"] = run.seed;
  j["constants"] = {
      {"euler_gamma", {{"value", constants::kEulerGamma}, {"source", constants::kProvenance}}},
      {"mertens_B", {{"value", constants::kMertensB}, {"source", constants::kProvenance}}},
  };
  return j;
}

inline Json form_json(const FormSpec& f) {
  Json j;
  j["label"] = f.label;
  j["weight"] = f.weight;
  return j;
}

// ---- coefficient tables

inline void write_table_csv(std::ostream& out, const CoeffTable& t) {
  out << "n,lambda\n";
  for (std::uint64_t n = 1; n <= t.limit(); ++n) out << n << ',' << t[n].get_str() << '\n';
}

inline Json table_json(const CoeffTable& t) {
  Json values = Json::object();
  for (std::uint64_t n = 1; n <= t.limit(); ++n) values[std::to_string(n)] = t[n].get_str();
  Json j;
  j["form"] = form_json(t.form());
  j["limit"] = t.limit();
  j["values"] = std::move(values);
  return j;
}

/// Inverse of table_json for the values block; the form is supplied.
inline CoeffTable table_from_json(const Json& j, FormSpec form) {
  const std::uint64_t limit = j.at("limit").get<std::uint64_t>();
  std::vector<mpz_class> values(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) values[n] = mpz_class(j.at("values").at(std::to_string(n)).get<std::string>());
  return CoeffTable(std::move(form), std::move(values));
}

// ---- bound reports

inline std::string flags_of(const BoundReport& r) {
  std::string s;
  if (r.vanishing()) s = "vanishing";
  for (BoundKind b : kAllBounds) {
    const auto ok = r.satisfied(b);
    if (!ok) continue;
    if (!s.empty()) s += ';';
    s += std::string(bound_name(b)) + (*ok ? ":ok" : ":FAIL");
  }
  return s;
}

inline void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "n,abs_coeff,log_abs_coeff";
  for (BoundKind b : kAllBounds) out << ",log_" << bound_name(b);
  out << ",flags\n";
  for (const auto& r : reports) {
    out << r.n << ',' << r.exact_abs_coeff.get_str() << ',' << (r.log_abs_coeff ? real_str(r.log_abs_coeff->lo) : "");
    for (BoundKind b : kAllBounds) {
      out << ',';
      const auto it = r.bounds.find(b);
      if (it != r.bounds.end()) out << real_str(it->second);
    }
    out << ',' << flags_of(r) << '\n';
  }
}

inline Json bound_report_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["weight"] = r.weight;
  if (r.prime_power) j["prime_power"] = {{"p", r.prime_power->p}, {"m", r.prime_power->m}};
  j["abs_coeff"] = r.exact_abs_coeff.get_str();
  j["vanishing"] = r.vanishing();
  if (r.log_abs_coeff) j["log_abs_coeff"] = {real_str(r.log_abs_coeff->lo), real_str(r.log_abs_coeff->hi)};
  Json bounds = Json::object();
  for (BoundKind b : kAllBounds) {
    const auto it = r.bounds.find(b);
    if (it == r.bounds.end()) continue;
    Json e;
    e["log_value"] = real_str(it->second);
    e["value"] = real_str(exp(it->second), 3);
    e["kind"] = is_upper_bound(b) ? "upper" : "lower";
    const auto ok = r.satisfied(b);
    e["satisfied"] = ok ? Json(*ok) : Json(nullptr);
    bounds[std::string(bound_name(b))] = std::move(e);
  }
  j["bounds"] = std::move(bounds);
  if (r.bounds.count(BoundKind::Thm1Lower)) j["thm1_nontrivial"] = r.thm1_nontrivial;
  return j;
}

inline Json sandwich_json(const SandwichSummary& s, bool include_reports) {
  Json j;
  Json stats = Json::object();
  for (BoundKind b : kAllBounds) {
    const auto c = s.checked.find(b);
    if (c == s.checked.end()) continue;
    const auto e = s.exceptions.find(b);
    Json entry;
    entry["checked"] = c->second;
    entry["exceptions"] = e == s.exceptions.end() ? Json::array() : Json(e->second);
    entry["fraction_satisfied"] = s.fraction_satisfied(b);
    stats[std::string(bound_name(b))] = std::move(entry);
  }
  j["total"] = s.reports.size();
  j["vanishing"] = s.vanishing;
  j["bounds"] = std::move(stats);
  if (include_reports) {
    Json arr = Json::array();
    for (const auto& r : s.reports) arr.push_back(bound_report_json(r));
    j["reports"] = std::move(arr);
  }
  return j;
}

// ---- diophantine

inline Json gap_json(const GapReport& g) {
  Json j;
  j["p"] = g.p;
  j["m"] = g.m;
  j["weight"] = g.weight;
  j["gap"] = real_str(g.gap);
  j["threshold"] = real_str(g.threshold);
  j["log_margin"] = real_str(g.log_margin);
  j["exact_zero"] = g.exact_zero;
  j["satisfied"] = g.satisfied;
  return j;
}

inline Json liouville_json(const RationalApprox& r, const LiouvilleReport& rep) {
  Json j;
  j["rational"] = r.str();
  j["height"] = rep.height.get_str();
  j["form_value"] = rep.form_value.get_str();
  j["lhs"] = {real_str(rep.lhs.lo), real_str(rep.lhs.hi)};
  j["rhs"] = real_str(rep.rhs);
  j["satisfied"] = rep.satisfied;
  return j;
}

// ---- density

inline Json comparison_json(const AsymptoticComparison& c) {
  Json j;
  j["x"] = c.x;
  j["tau"] = c.tau;
  j["lhs"] = real_str(c.lhs);
  j["rhs"] = real_str(c.rhs);
  j["ratio"] = real_str(c.ratio());
  j["difference"] = real_str(c.difference());
  return j;
}

inline Json wirsing_json(const WirsingReport& w) {
  Json j;
  j["function"] = w.function;
  j["x"] = w.x;
  j["tau"] = w.tau;
  j["lhs"] = real_str(w.lhs);
  j["euler_product"] = real_str(w.euler_product);
  j["constant"] = real_str(w.constant);
  j["rhs"] = real_str(w.rhs);
  j["ratio"] = real_str(w.ratio());
  return j;
}

inline Json density_json(const DensityReport& d) {
  Json j;
  j["form"] = d.form;
  j["weight"] = d.weight;
  j["threshold"] = threshold_name(d.kind);
  j["x"] = d.x;
  j["pi_x"] = d.pi_x;
  j["count_Pf"] = d.count_pf;
  j["Nf_count"] = d.nf_count;
  j["empirical_tau"] = real_str(d.empirical_tau);
  j["model_tau"] = d.model_tau;
  j["mertens"] = comparison_json(d.mertens);
  j["harmonic"] = comparison_json(d.harmonic);
  if (d.wirsing) j["wirsing"] = wirsing_json(*d.wirsing);
  Json cps = Json::array();
  for (const auto& c : d.checkpoints) {
    cps.push_back({{"x", c.x},
                   {"pi_x", c.pi_x},
                   {"count_Pf", c.count_pf},
                   {"Nf_count", c.nf_count},
                   {"empirical_tau", real_str(c.empirical_tau, 10)},
                   {"mertens_ratio", real_str(c.mertens_ratio, 10)},
                   {"harmonic_diff", real_str(c.harmonic_diff, 10)}});
  }
  j["checkpoints"] = std::move(cps);
  return j;
}

inline void write_density_csv(std::ostream& out, const DensityReport& d) {
  out << "x,pi_x,count_Pf,Nf_count,empirical_tau,mertens_ratio,harmonic_diff\n";
  for (const auto& c : d.checkpoints)
    out << c.x << ',' << c.pi_x << ',' << c.count_pf << ',' << c.nf_count << ',' << real_str(c.empirical_tau, 10) << ','
        << real_str(c.mertens_ratio, 10) << ',' << real_str(c.harmonic_diff, 10) << '\n';
}

inline Json cross_check_json(const ConstantsCrossCheck& c) {
  Json j;
  j["x"] = c.x;
  j["gamma_limit"] = real_str(c.gamma_limit);
  j["gamma_error"] = real_str(c.gamma_error, 4);
  j["B_limit"] = real_str(c.b_limit);
  j["B_error"] = real_str(c.b_error, 4);
  return j;
}

}  // namespace modcoeff::io
