// modcoeff: command-line front end.
//
// Exit codes: 0 ok, 1 hard invariant violated (Deligne, Liouville),
// 2 usage error, 3 library error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "modcoeff/io.hpp"
#include "modcoeff/modcoeff.hpp"

namespace {

using namespace modcoeff;
using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  mpfr_prec_t precision = kDefaultPrecision;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--precision", c.precision, "working precision in bits (>= 64)")
      ->envname("MODCOEFF_PRECISION")
      ->check(CLI::Range(64, 1 << 20));
  sub->add_option("--threads", c.threads, "worker threads for scans")
      ->envname("MODCOEFF_THREADS")
      ->check(CLI::Range(1, 256));
  sub->add_option("--seed", c.seed, "seed recorded in every report");
  sub->add_option("--format", c.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  sub->add_option("--output,-o", c.output, "write to a file instead of stdout");
}

// Accepts 1000000 as well as 1e6.
std::uint64_t parse_count(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    if (text.find_first_of("eE.") == std::string::npos) {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    } else {
      const double v = std::stod(text, &used);
      if (used == text.size() && v >= 0 && v <= 9.0e15 && v == std::floor(v)) return static_cast<std::uint64_t>(v);
    }
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("bad value for ") + what + ": " + text);
}

FormSpec parse_form(const std::string& text, std::optional<int> weight) {
  static const std::regex ec(R"(ec:a=(-?\d+),b=(-?\d+))");
  std::smatch m;
  if (text == "delta") {
    if (weight && *weight != 12) throw UsageError("delta has weight 12");
    return FormSpec::delta();
  }
  if (std::regex_match(text, m, ec)) {
    FormSpec f = FormSpec::elliptic_curve(std::stol(m[1]), std::stol(m[2]), weight.value_or(2));
    f.validate();
    return f;
  }
  throw UsageError("unknown form '" + text + "' (expected delta or ec:a=A,b=B)");
}

std::string fixed(const Real& x, int digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", digits, x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string echo_line(const io::RunInfo& run) {
  std::string s = "# " + std::string(io::kToolName) + " " + std::string(io::kToolVersion) + " " + run.command;
  for (const auto& [key, value] : run.config.items())
    s += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  s += " precision=" + std::to_string(run.precision) + " seed=" + std::to_string(run.seed);
  return s + "\n";
}

io::RunInfo run_info(const std::string& command, const Common& c, Json config) {
  return {command, std::move(config), c.precision, c.seed};
}

Json with_header(const io::RunInfo& run, Json body) {
  Json j = io::header(run);
  j["result"] = std::move(body);
  return j;
}

// ---- coeff

struct CoeffArgs {
  std::string form = "delta";
  std::optional<int> weight;
  std::string n;
  std::string table;
};

int cmd_coeff(const CoeffArgs& a, const Common& c, std::ostream& out) {
  const FormSpec form = parse_form(a.form, a.weight);
  if (a.n.empty() == a.table.empty()) throw UsageError("give exactly one of --n or --table");
  Json config{{"form", form.label}, {"weight", form.weight}};
  if (!a.n.empty()) {
    const std::uint64_t n = parse_count(a.n, "--n");
    if (n == 0) throw UsageError("--n must be >= 1");
    config["n"] = n;
    const mpz_class v = coeff_at(form, n);
    if (c.format == "json") {
      out << with_header(run_info("coeff", c, config), {{"n", n}, {"lambda", v.get_str()}}).dump(2) << '\n';
    } else if (c.format == "csv") {
      out << "n,lambda\n" << n << ',' << v.get_str() << '\n';
    } else {
      out << v.get_str() << '\n';
    }
    return 0;
  }
  const std::uint64_t limit = parse_count(a.table, "--table");
  config["table"] = limit;
  const CoeffTable t = coeff_table(form, limit);
  if (c.format == "json") {
    out << with_header(run_info("coeff", c, config), io::table_json(t)).dump(2) << '\n';
  } else if (c.format == "csv") {
    io::write_table_csv(out, t);
  } else {
    const int width = static_cast<int>(std::to_string(limit).size());
    for (std::uint64_t n = 1; n <= limit; ++n) out << std::setw(width) << n << "  " << t[n].get_str() << '\n';
  }
  return 0;
}

// ---- verify

struct VerifyArgs {
  std::string form = "delta";
  std::optional<int> weight;
  std::string n;
  std::string max_n;
  std::string min_n = "1";
  double epsilon = 0.01;
  bool report_all = false;
  bool gap = false;
  std::uint64_t p = 0;
  std::uint64_t p_max = 0;
  std::optional<int> k;
  unsigned m_max = 20;
};

std::string factor_str(std::uint64_t n) {
  std::string s;
  for (const auto& f : factorize(n)) {
    if (!s.empty()) s += " * ";
    s += std::to_string(f.p);
    if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
  }
  return s.empty() ? "1" : s;
}

int verify_single(const VerifyArgs& a, const FormSpec& form, const Common& c, std::ostream& out) {
  const std::uint64_t n = parse_count(a.n, "--n");
  if (n == 0) throw UsageError("--n must be >= 1");
  const BoundOptions opts{a.epsilon, c.precision, c.threads};
  const mpz_class lambda = coeff_at(form, n);
  const BoundReport r = make_bound_report(n, lambda, form.weight, opts);
  const bool deligne_ok = r.satisfied(BoundKind::Deligne).value_or(true);
  const Json config{{"form", form.label}, {"weight", form.weight}, {"n", n}, {"epsilon", a.epsilon}};
  const auto run = run_info("verify", c, config);

  if (c.format == "json") {
    out << with_header(run, io::bound_report_json(r)).dump(2) << '\n';
  } else if (c.format == "csv") {
    io::write_bounds_csv(out, {r});
  } else {
    out << echo_line(run);
    out << "n = " << n << " = " << factor_str(n) << "\n";
    auto line = [&](const std::string& name, const std::string& formula, const std::string& value) {
      out << std::left << std::setw(12) << name << "  " << std::setw(38) << formula << "  " << value << '\n';
    };
    auto bound_value = [&](BoundKind b) { return exp(r.bounds.at(b)).sci(3); };
    if (r.bounds.count(BoundKind::Thm2Lower))
      line("thm2_lower", "n^((k-3)/2 + logloglog n / loglog n)", bound_value(BoundKind::Thm2Lower));
    line("|lambda(n)|", r.exact_abs_coeff.get_str(),
         r.vanishing() ? "0" : Real::from_mpz(r.exact_abs_coeff, c.precision).sci(3));
    line("deligne", "d(n) n^((k-1)/2)", bound_value(BoundKind::Deligne));
    if (r.bounds.count(BoundKind::Hecke)) line("hecke", "p^((k-1)m), c = 1", bound_value(BoundKind::Hecke));
    if (r.bounds.count(BoundKind::GtLower)) line("gt_lower", "p^((k-1)/2) loglog p / sqrt(log p)", bound_value(BoundKind::GtLower));
    if (r.bounds.count(BoundKind::Thm1Lower))
      line("thm1_lower", std::string("(1/8) p^((k-3)n/2 - 2k + 2 - eps)") + (r.thm1_nontrivial ? "" : " [trivial]"),
           bound_value(BoundKind::Thm1Lower));
    out << "flags: " << io::flags_of(r) << '\n';
  }
  return deligne_ok ? 0 : 1;
}

int verify_scan(const VerifyArgs& a, const FormSpec& form, const Common& c, std::ostream& out) {
  const std::uint64_t hi = parse_count(a.max_n, "--max-n");
  const std::uint64_t lo = parse_count(a.min_n, "--min-n");
  if (lo == 0 || lo > hi) throw UsageError("need 1 <= --min-n <= --max-n");
  const BoundOptions opts{a.epsilon, c.precision, c.threads};
  const CoeffTable table = coeff_table(form, hi);
  const auto ns = index_range(lo, hi);
  const SandwichSummary s = verify_sandwich(table, ns, opts);
  const auto deligne = s.exceptions.find(BoundKind::Deligne);
  const std::size_t violations = deligne == s.exceptions.end() ? 0 : deligne->second.size();
  const Json config{{"form", form.label}, {"weight", form.weight}, {"min_n", lo}, {"max_n", hi}, {"epsilon", a.epsilon}};
  const auto run = run_info("verify", c, config);

  if (c.format == "json") {
    out << with_header(run, io::sandwich_json(s, a.report_all)).dump(2) << '\n';
  } else if (c.format == "csv") {
    io::write_bounds_csv(out, s.reports);
  } else {
    out << echo_line(run);
    out << "range: [" << lo << ", " << hi << "]  coefficients: " << s.reports.size()
        << "  vanishing: " << s.vanishing.size() << '\n';
    out << std::left << std::setw(12) << "bound" << std::setw(7) << "kind" << std::setw(10) << "checked"
        << std::setw(12) << "exceptions" << "fraction\n";
    for (BoundKind b : kAllBounds) {
      const auto ch = s.checked.find(b);
      if (ch == s.checked.end()) continue;
      const auto ex = s.exceptions.find(b);
      const std::size_t nex = ex == s.exceptions.end() ? 0 : ex->second.size();
      std::ostringstream frac;
      frac << std::fixed << std::setprecision(6) << s.fraction_satisfied(b);
      out << std::setw(12) << bound_name(b) << std::setw(7) << (is_upper_bound(b) ? "upper" : "lower")
          << std::setw(10) << ch->second << std::setw(12) << nex << frac.str() << '\n';
    }
    for (const auto& [b, list] : s.exceptions) {
      out << bound_name(b) << " exceptions (first 20):";
      for (std::size_t i = 0; i < list.size() && i < 20; ++i) out << ' ' << list[i];
      out << '\n';
    }
    out << "deligne violations: " << violations << '\n';
  }
  return violations == 0 ? 0 : 1;
}

int verify_gap(const VerifyArgs& a, FormSpec form, const Common& c, std::ostream& out) {
  if (a.k) {
    if (form.kind == FormKind::Delta && *a.k != 12) throw UsageError("delta has weight 12");
    form.weight = *a.k;
  }
  std::vector<std::uint64_t> primes;
  if (a.p) {
    if (!is_prime(a.p)) throw UsageError("--p must be prime");
    primes.push_back(a.p);
  } else if (a.p_max >= 2) {
    primes = PrimeSieve(a.p_max).primes();
  } else {
    throw UsageError("--gap needs --p or --p-max");
  }
  if (a.m_max < 1) throw UsageError("--m-max must be >= 1");

  std::vector<GapReport> reports;
  for (std::uint64_t p : primes) {
    const FrobeniusAngle angle = frobenius_angle(coeff_at(form, p), p, form.weight, c.precision);
    for (unsigned m = 1; m <= a.m_max; ++m) reports.push_back(unimodular_gap_check(angle, m));
  }
  std::size_t violations = 0, zeros = 0;
  for (const auto& g : reports) {
    violations += !g.satisfied;
    zeros += g.exact_zero;
  }
  Json config{{"form", form.label}, {"weight", form.weight}, {"m_max", a.m_max}};
  if (a.p) config["p"] = a.p;
  else config["p_max"] = a.p_max;
  const auto run = run_info("verify-gap", c, config);

  if (c.format == "json") {
    Json arr = Json::array();
    for (const auto& g : reports) arr.push_back(io::gap_json(g));
    out << with_header(run, {{"checks", reports.size()}, {"violations", violations}, {"exact_zero", zeros},
                             {"reports", std::move(arr)}})
               .dump(2)
        << '\n';
  } else if (c.format == "csv") {
    out << "p,m,weight,gap,threshold,log_margin,exact_zero,satisfied\n";
    for (const auto& g : reports)
      out << g.p << ',' << g.m << ',' << g.weight << ',' << io::real_str(g.gap) << ',' << io::real_str(g.threshold)
          << ',' << io::real_str(g.log_margin) << ',' << g.exact_zero << ',' << g.satisfied << '\n';
  } else {
    out << echo_line(run);
    out << std::left << std::setw(8) << "p" << std::setw(5) << "m" << std::setw(14) << "gap" << std::setw(14)
        << "threshold" << std::setw(14) << "log_margin" << "status\n";
    for (const auto& g : reports)
      out << std::setw(8) << g.p << std::setw(5) << g.m << std::setw(14) << g.gap.sci(6) << std::setw(14)
          << g.threshold.sci(6) << std::setw(14) << io::real_str(g.log_margin, 4)
          << (g.exact_zero ? "zero" : g.satisfied ? "ok" : "VIOLATED") << '\n';
    out << "checks: " << reports.size() << "  violations: " << violations << "  exact zeros: " << zeros << '\n';
  }
  return 0;  // the gap inequality is asymptotic; violations annotate only
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  if (!(a.epsilon > 0)) throw UsageError("--epsilon must be positive");
  const FormSpec form = parse_form(a.form, a.weight);
  if (a.gap) return verify_gap(a, form, c, out);
  if (a.n.empty() == a.max_n.empty()) throw UsageError("give exactly one of --n, --max-n or --gap");
  return a.n.empty() ? verify_scan(a, form, c, out) : verify_single(a, form, c, out);
}

// ---- density

struct DensityArgs {
  std::string form = "delta";
  std::optional<int> weight;
  std::string x;
  std::string threshold = "nonvanishing";
  bool mertens = false;
  bool wirsing = false;
  double tau = 1.0;
};

int cmd_density(const DensityArgs& a, const Common& c, std::ostream& out) {
  const std::uint64_t x = parse_count(a.x, "--x");
  if (x < 3) throw UsageError("--x must be >= 3");
  if (!(a.tau >= 0)) throw UsageError("--tau must be >= 0");
  Json config{{"x", x}, {"tau", a.tau}, {"wirsing", a.wirsing}};
  std::optional<PrimeClassification> cls;
  if (a.mertens) {
    config["set"] = "all-primes";
    cls.emplace(all_primes(x));
  } else {
    const FormSpec form = parse_form(a.form, a.weight);
    ThresholdKind kind = ThresholdKind::Nonvanishing;
    if (a.threshold == "gt") kind = ThresholdKind::GTLowerBound;
    else if (a.threshold == "all") kind = ThresholdKind::AllPrimes;
    config["form"] = form.label;
    config["threshold"] = a.threshold;
    cls.emplace(classify_primes(form, x, kind, {}, c.precision));
  }
  const DensityReport d = density_report(*cls, x, a.tau, a.wirsing && a.tau > 0, c.precision);
  std::optional<ConstantsCrossCheck> cc;
  if (a.mertens) cc = cross_check_constants(cls->sieve(), x, c.precision);
  const auto run = run_info("density", c, config);

  if (c.format == "json") {
    Json body = io::density_json(d);
    if (cc) body["constants_check"] = io::cross_check_json(*cc);
    out << with_header(run, std::move(body)).dump(2) << '\n';
  } else if (c.format == "csv") {
    io::write_density_csv(out, d);
  } else {
    out << echo_line(run);
    out << "set: " << d.form << "  threshold: " << threshold_name(d.kind) << "  x: " << d.x << '\n';
    out << "pi(x): " << d.pi_x << "  |P_f(x)|: " << d.count_pf << '\n';
    out << "empirical tau: " << fixed(d.empirical_tau, 6) << "  model tau: " << d.model_tau << '\n';
    out << "N_f(x): " << d.nf_count << '\n';
    out << "mertens ratio: " << fixed(d.mertens.ratio(), 7) << "  (lhs " << d.mertens.lhs.sci(8) << ", rhs "
        << d.mertens.rhs.sci(8) << ")\n";
    out << "harmonic difference: " << d.harmonic.difference().sci(4) << "  (lhs " << d.harmonic.lhs.sci(8)
        << ", rhs " << d.harmonic.rhs.sci(8) << ")\n";
    if (d.wirsing) out << "wirsing ratio: " << fixed(d.wirsing->ratio(), 7) << '\n';
    if (cc)
      out << "constants at x: gamma limit " << cc->gamma_limit.sci(6) << " (|+gamma| " << cc->gamma_error.sci(2)
          << "), B limit " << cc->b_limit.sci(6) << " (|-B| " << cc->b_error.sci(2) << ")\n";
    out << std::left << std::setw(10) << "x" << std::setw(9) << "pi_x" << std::setw(10) << "count_Pf"
        << std::setw(10) << "Nf_count" << std::setw(12) << "tau_emp" << std::setw(14) << "mertens_ratio"
        << "harmonic_diff\n";
    for (const auto& cp : d.checkpoints)
      out << std::setw(10) << cp.x << std::setw(9) << cp.pi_x << std::setw(10) << cp.count_pf << std::setw(10)
          << cp.nf_count << std::setw(12) << fixed(cp.empirical_tau, 6) << std::setw(14)
          << fixed(cp.mertens_ratio, 7) << cp.harmonic_diff.sci(4) << '\n';
  }
  return 0;
}

// ---- liouville

struct LiouvilleArgs {
  std::string poly;
  int root = -1;
  std::size_t convergents = 10;
  std::vector<std::string> rationals;
  bool relaxed = false;
};

MinimalPolynomial parse_poly(const std::string& text, bool relaxed) {
  std::vector<mpz_class> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coeffs.emplace_back(item);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad coefficient '" + item + "' in --poly");
    }
  }
  return MinimalPolynomial::from_descending(std::move(coeffs),
                                            relaxed ? ContentPolicy::AllowContent : ContentPolicy::RequirePrimitive);
}

int cmd_liouville(const LiouvilleArgs& a, const Common& c, std::ostream& out) {
  const MinimalPolynomial f = parse_poly(a.poly, a.relaxed);
  if (f.degree() < 2) fail(Errc::Degree, "Liouville bound needs degree >= 2");
  auto roots = real_roots(f, c.precision);
  if (roots.empty()) fail(Errc::Domain, f.str() + " has no real roots");
  const std::size_t idx = a.root < 0 ? roots.size() - 1 : static_cast<std::size_t>(a.root);
  if (idx >= roots.size()) throw UsageError("--root out of range; f has " + std::to_string(roots.size()) + " real roots");

  std::vector<RationalApprox> targets;
  for (const auto& s : a.rationals) targets.push_back(RationalApprox::parse(s));
  if (a.convergents > 0)
    for (auto& r : convergents_of(roots[idx], a.convergents).convergents) targets.push_back(std::move(r));

  LiouvilleTarget target{f, roots[idx], mahler_height(f, c.precision)};
  const Real constant = liouville_constant(f, c.precision);
  struct Row {
    RationalApprox r;
    std::optional<LiouvilleReport> rep;  // empty when r is a root of f
  };
  std::vector<Row> rows;
  std::size_t satisfied = 0, checked = 0;
  for (const auto& r : targets) {
    try {
      LiouvilleReport rep = liouville_check(target, r, c.precision);
      ++checked;
      satisfied += rep.satisfied;
      rows.push_back({r, std::move(rep)});
    } catch (const Error& e) {
      if (e.code() != Errc::ZeroForm) throw;
      rows.push_back({r, std::nullopt});
    }
  }
  const Interval root_box = roots[idx].enclosure(c.precision);
  Json config{{"poly", a.poly}, {"root", idx}, {"convergents", a.convergents}, {"rationals", a.rationals},
              {"relaxed", a.relaxed}};
  const auto run = run_info("liouville", c, config);

  if (c.format == "json") {
    Json arr = Json::array();
    for (const auto& row : rows)
      arr.push_back(row.rep ? io::liouville_json(row.r, *row.rep) : Json{{"rational", row.r.str()}, {"root", true}});
    Json body{{"polynomial", f.str()},
              {"degree", f.degree()},
              {"root_index", idx},
              {"root_enclosure", {io::real_str(root_box.lo), io::real_str(root_box.hi)}},
              {"mahler_height", {io::real_str(target.mahler.lo), io::real_str(target.mahler.hi)}},
              {"liouville_constant", io::real_str(constant)},
              {"checked", checked},
              {"satisfied", satisfied},
              {"checks", std::move(arr)}};
    out << with_header(run, std::move(body)).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "rational,height,form_value,lhs_lo,lhs_hi,rhs,satisfied\n";
    for (const auto& row : rows) {
      if (!row.rep) continue;
      out << row.r.str() << ',' << row.rep->height.get_str() << ',' << row.rep->form_value.get_str() << ','
          << io::real_str(row.rep->lhs.lo) << ',' << io::real_str(row.rep->lhs.hi) << ','
          << io::real_str(row.rep->rhs) << ',' << row.rep->satisfied << '\n';
    }
  } else {
    out << echo_line(run);
    out << "f = " << f.str() << "  (degree " << f.degree() << ")\n";
    out << "root #" << idx << " ~ " << root_box.mid().sci(20) << '\n';
    out << "mahler height in [" << target.mahler.lo.sci(12) << ", " << target.mahler.hi.sci(12) << "]\n";
    out << "liouville constant >= " << constant.sci(12) << '\n';
    out << std::left << std::setw(44) << "p/q" << std::setw(16) << "|alpha - p/q|" << std::setw(16) << "c/H^d"
        << std::setw(8) << "F(p,q)" << "status\n";
    for (const auto& row : rows) {
      out << std::setw(44) << row.r.str();
      if (!row.rep) {
        out << "root of f, skipped\n";
        continue;
      }
      out << std::setw(16) << row.rep->lhs.lo.sci(6) << std::setw(16) << row.rep->rhs.sci(6) << std::setw(8)
          << row.rep->form_value.get_str() << (row.rep->satisfied ? "ok" : "VIOLATED") << '\n';
    }
    out << "satisfied: " << satisfied << '/' << checked << '\n';
  }
  return satisfied == checked ? 0 : 1;
}

// ---- wirsing

struct WirsingArgs {
  std::string function = "one";
  std::string x;
  double tau = 1.0;
  std::string form = "delta";
  std::string threshold = "gt";
};

int cmd_wirsing(const WirsingArgs& a, const Common& c, std::ostream& out) {
  const std::uint64_t x = parse_count(a.x, "--x");
  std::optional<PrimeClassification> cls;
  MultiplicativeSpec f;
  Json config{{"function", a.function}, {"x", x}, {"tau", a.tau}};
  if (a.function == "one") {
    f = constant_one();
  } else if (a.function == "mod4") {
    f = {"1_{p = 1 mod 4}", [](std::uint64_t p, unsigned) { return p % 4 == 1 ? 1.0 : 0.0; }, 1.0};
  } else if (a.function == "chi") {
    const ThresholdKind kind = a.threshold == "gt" ? ThresholdKind::GTLowerBound : ThresholdKind::Nonvanishing;
    cls.emplace(classify_primes(parse_form(a.form, std::nullopt), x, kind, {}, c.precision));
    f = indicator_of(*cls);
    config["form"] = a.form;
    config["threshold"] = a.threshold;
  } else {
    throw UsageError("unknown --function " + a.function);
  }
  const WirsingReport w = wirsing_eval(f, x, a.tau, c.precision);
  const auto run = run_info("wirsing", c, config);
  if (c.format == "json") {
    out << with_header(run, io::wirsing_json(w)).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "function,x,tau,lhs,rhs,ratio\n"
        << w.function << ',' << w.x << ',' << w.tau << ',' << io::real_str(w.lhs) << ',' << io::real_str(w.rhs) << ','
        << io::real_str(w.ratio()) << '\n';
  } else {
    out << echo_line(run);
    out << "f = " << w.function << "  x = " << w.x << "  tau = " << w.tau << '\n';
    out << "sum f(n):      " << w.lhs.sci(10) << '\n';
    out << "euler product: " << w.euler_product.sci(10) << '\n';
    out << "constant:      " << w.constant.sci(10) << '\n';
    out << "rhs:           " << w.rhs.sci(10) << '\n';
    out << "ratio: " << fixed(w.ratio(), 7) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier coefficients of modular forms and the bounds around them"};
  app.require_subcommand(1);
  Common common;

  CoeffArgs coeff;
  auto* c = app.add_subcommand("coeff", "exact coefficients lambda(n)");
  c->add_option("--form", coeff.form, "delta or ec:a=A,b=B");
  c->add_option("--weight", coeff.weight, "weight override (elliptic curves)");
  c->add_option("--n", coeff.n, "single index");
  c->add_option("--table", coeff.table, "table of lambda(1..N)");
  add_common(c, common);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "sandwich coefficients between the bounds");
  v->add_option("--form", verify.form, "delta or ec:a=A,b=B");
  v->add_option("--weight", verify.weight, "weight override (elliptic curves)");
  v->add_option("--n", verify.n, "single index");
  v->add_option("--max-n", verify.max_n, "scan [min-n, max-n]");
  v->add_option("--min-n", verify.min_n, "scan start (default 1)");
  v->add_option("--epsilon", verify.epsilon, "epsilon in the prime-power lower bound");
  v->add_flag("--report-all", verify.report_all, "include every per-n report in JSON");
  v->add_flag("--gap", verify.gap, "check the unimodular gap 2|sin((m+1) theta_p)|");
  v->add_option("--p", verify.p, "prime for --gap");
  v->add_option("--p-max", verify.p_max, "all primes up to this bound for --gap");
  v->add_option("--k", verify.k, "weight for --gap");
  v->add_option("--m-max", verify.m_max, "largest exponent m for --gap");
  add_common(v, common);

  DensityArgs density;
  auto* d = app.add_subcommand("density", "prime densities, N_f, Mertens and harmonic sums");
  d->alias("density-scan");
  d->add_option("--form", density.form, "delta or ec:a=A,b=B");
  d->add_option("--weight", density.weight, "weight override (elliptic curves)");
  d->add_option("--x", density.x, "limit x")->required();
  d->add_option("--threshold", density.threshold, "gt, nonvanishing or all")
      ->check(CLI::IsMember({"gt", "nonvanishing", "all"}));
  d->add_flag("--mertens", density.mertens, "use the full set of primes");
  d->add_flag("--wirsing", density.wirsing, "also evaluate the Wirsing formula for chi_f");
  d->add_option("--tau", density.tau, "model density fed to the asymptotic formulas");
  add_common(d, common);

  LiouvilleArgs liou;
  auto* l = app.add_subcommand("liouville", "explicit Liouville bounds at convergents");
  l->add_option("--poly", liou.poly, "integer coefficients, leading first, e.g. 1,0,-2")->required();
  l->add_option("--root", liou.root, "real root index in increasing order (default: largest)");
  l->add_option("--convergents", liou.convergents, "number of convergents to check");
  l->add_option("--rational", liou.rationals, "extra rationals a/b to check");
  l->add_flag("--relaxed", liou.relaxed, "accept polynomials with content > 1");
  add_common(l, common);

  WirsingArgs wir;
  auto* w = app.add_subcommand("wirsing", "Wirsing's mean-value formula");
  w->add_option("--function", wir.function, "one, mod4 or chi")->check(CLI::IsMember({"one", "mod4", "chi"}));
  w->add_option("--x", wir.x, "limit x")->required();
  w->add_option("--tau", wir.tau, "density tau of f on primes");
  w->add_option("--form", wir.form, "form for --function chi");
  w->add_option("--threshold", wir.threshold, "gt or nonvanishing for --function chi");
  add_common(w, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::ostringstream buffer;
  int rc = 0;
  try {
    if (c->parsed()) rc = cmd_coeff(coeff, common, buffer);
    else if (v->parsed()) rc = cmd_verify(verify, common, buffer);
    else if (d->parsed()) rc = cmd_density(density, common, buffer);
    else if (l->parsed()) rc = cmd_liouville(liou, common, buffer);
    else if (w->parsed()) rc = cmd_wirsing(wir, common, buffer);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (common.output.empty()) {
    std::cout << buffer.str();
    std::cout.flush();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    file << buffer.str();
    if (!file) {
      std::cerr << "error[io]: cannot write " << common.output << '\n';
      return 3;
    }
  }
  return rc;
}
