// ffvar: exact variance statistics for polynomial arithmetic over small
// finite fields, with matched matrix-integral predictions.
//
// Subcommands: qr | sector | short-interval | ap | rmt {mc,exact,quadrature}
//              | trend | verify
// Every run writes <name>.report.json and <name>.csv.  Reports embed the
// effective configuration, seed, worker count, and tool version; wall-clock
// data is isolated in the "timing" object (JSON) and the seconds column
// (CSV) so that reruns with identical configuration and seed reproduce the
// remaining JSON byte for byte.
//
// Exit codes: 0 success, 1 identity failure, 2 parameter-window violation,
//             3 guardrail exceeded.

#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffvar/arith_weights.hpp"
#include "ffvar/bigint.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exact_rmt.hpp"
#include "ffvar/haar.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/stats.hpp"
#include "ffvar/verify.hpp"

namespace {

using nlohmann::json;
using namespace ffvar;

constexpr const char* kVersion = "ffvar 1.0.0";
constexpr int kCsvSchema = 1;

// ---------------------------------------------------------------------------
// small formatting helpers
// ---------------------------------------------------------------------------

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string rat_string(const BigRat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

json rat_json(const BigRat& r) {
  return json{{"rational", rat_string(r)},
              {"numerator", numerator(r).str()},
              {"denominator", denominator(r).str()},
              {"decimal", to_double(r)}};
}

json integral_json(const IntegralValue& v) {
  json j;
  j["exact"] = v.exact;
  if (v.exact) {
    j["value"] = rat_json(v.value);
    j["in_window"] = v.in_window;
  } else {
    j["estimate"] = v.estimate;
    j["std_error"] = v.std_error;
    j["samples"] = v.samples;
    j["seed"] = v.seed;
  }
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += "\"\"";
    else
      out += c;
  }
  out += "\"";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WindowError("cannot write output file: " + path);
  out << content;
}

std::string poly_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.deg(); i >= 0; --i) {
    int64_t c = f.coeff(i);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c;
      os << "T";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string group_name(MatrixGroup g) {
  return g == MatrixGroup::symplectic ? "symplectic" : "unitary";
}

// ---------------------------------------------------------------------------
// argument parsing helpers
// ---------------------------------------------------------------------------

Weight parse_weight(const std::string& s) {
  if (s == "d" || s == "divisor") return Weight::divisor;
  if (s == "L" || s == "lambda" || s == "vm" || s == "von-mangoldt" || s == "von_mangoldt")
    return Weight::von_mangoldt;
  throw WindowError("unknown weight '" + s + "' (use d or L)");
}

MatrixGroup parse_group(const std::string& s) {
  if (s == "u" || s == "unitary") return MatrixGroup::unitary;
  if (s == "sp" || s == "symplectic") return MatrixGroup::symplectic;
  throw WindowError("unknown group '" + s + "' (use u or sp)");
}

SymbolKind parse_kind(const std::string& s) {
  if (s == "secular" || s == "sc") return SymbolKind::secular;
  if (s == "trace" || s == "tr") return SymbolKind::trace;
  throw WindowError("unknown kind '" + s + "' (use secular or trace)");
}

// polynomial over F_q from text such as "T^2+T", "2T+1", "T^3 + 2*T + 4"
Poly parse_poly(int64_t q, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw WindowError("empty polynomial");
  std::vector<int64_t> coef;
  auto add = [&](size_t e, int64_t c) {
    if (coef.size() <= e) coef.resize(e + 1, 0);
    coef[e] = ((coef[e] + c) % q + q) % q;
  };
  size_t i = 0;
  int64_t sign = 1;
  while (i < s.size()) {
    if (s[i] == '+' || s[i] == '-') {
      sign = (s[i] == '-') ? -sign : sign;
      ++i;
      continue;
    }
    int64_t c = 1;
    bool have_digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (!have_digits) c = 0;
      have_digits = true;
      c = c * 10 + (s[i] - '0');
      ++i;
    }
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && (s[i] == 'T' || s[i] == 't' || s[i] == 'S' || s[i] == 's')) {
      ++i;
      size_t e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw WindowError("cannot parse polynomial: " + text);
        e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + static_cast<size_t>(s[i] - '0');
          ++i;
        }
      }
      add(e, sign * c);
    } else if (have_digits) {
      add(0, sign * c);
    } else {
      throw WindowError("cannot parse polynomial: " + text);
    }
    sign = 1;
  }
  return Poly(q, coef);
}

// exponent map from text such as "1:2,2:1" (j -> exponent)
std::map<int64_t, int64_t> parse_exponent_map(const std::string& text) {
  std::map<int64_t, int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw WindowError("exponent map entries look like j:a, got '" + item + "'");
    int64_t j = std::stoll(item.substr(0, colon));
    int64_t a = std::stoll(item.substr(colon + 1));
    if (j < 1 || a < 1) throw WindowError("exponent map needs j >= 1, a >= 1");
    out[j] = a;
  }
  if (out.empty()) throw WindowError("empty exponent map");
  return out;
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

// ---------------------------------------------------------------------------
// configuration plumbing
// ---------------------------------------------------------------------------

int64_t effective_guardrail(int64_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* s = std::getenv("FFVAR_GUARDRAIL")) {
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (!end || *end != '\0' || v <= 0)
      throw WindowError("FFVAR_GUARDRAIL must be a positive integer");
    return v;
  }
  return kDefaultGuardrail;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw WindowError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw WindowError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw WindowError("config file must hold a JSON object");
  return j;
}

// config-file values fill in flags the user did not pass explicitly
struct Overlay {
  CLI::App* sub = nullptr;
  json cfg;

  explicit Overlay(CLI::App* s) : sub(s) {}

  void load(const std::string& path) {
    if (!path.empty()) cfg = load_config_file(path);
  }
  template <typename T>
  void apply(const std::string& flag, const std::string& key, T& var) const {
    if (cfg.is_null() || !cfg.contains(key)) return;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt && opt->count() > 0) return;
    try {
      var = cfg.at(key).get<T>();
    } catch (const json::exception& e) {
      throw WindowError("config key '" + key + "': " + e.what());
    }
  }
};

json make_envelope(const std::string& command, const std::string& name, const json& config,
                   const json& results, double seconds) {
  json j;
  j["tool"] = kVersion;
  j["command"] = command;
  j["name"] = name;
  j["workers"] = 1;
  j["config"] = config;
  j["results"] = results;
  j["timing"] = {{"timestamp", iso_timestamp()}, {"seconds", seconds}};
  return j;
}

void write_outputs(const std::string& name, const json& envelope, const std::string& csv) {
  write_file(name + ".report.json", envelope.dump(2) + "\n");
  write_file(name + ".csv", csv);
}

// ---------------------------------------------------------------------------
// matched matrix integrals for the statistics
// ---------------------------------------------------------------------------

// exact closed form for a statistic's matched integral, where one exists
IntegralValue exact_matched_integral(const RmtIntegralSpec& s) {
  const CompositionFunctional& f = s.functional;
  if (!f.squared) throw WindowError("matched statistic integrals are squared functionals");
  if (s.group == MatrixGroup::unitary && f.kind == SymbolKind::trace) {
    if (f.k == 1)
      return IntegralValue::exact_value(BigRat(de_trace_covariance(f.n, s.dim)));
    if (f.k == 2) {
      IntegralValue v =
          composition_moment_sums(CompositionKind::unitary_squared, 2, f.n, s.dim);
      if (!v.in_window)
        throw WindowError("closed form needs n <= N; use --rmt quadrature or --rmt mc");
      return v;
    }
  }
  if (s.group == MatrixGroup::symplectic && f.kind == SymbolKind::trace) {
    if (f.k == 1) return IntegralValue::exact_value(symplectic_trace_pair(f.n, f.n, s.dim));
    if (f.k == 2) {
      IntegralValue v =
          composition_moment_sums(CompositionKind::symplectic_squared, 2, f.n, s.dim);
      if (!v.in_window)
        throw WindowError("closed form needs 2n <= N; use --rmt quadrature or --rmt mc");
      return v;
    }
  }
  if (s.group == MatrixGroup::symplectic && f.kind == SymbolKind::secular && f.k == 1) {
    MultiSeries ms = bump_gamburd_expand(1, s.dim, 2);
    return IntegralValue::exact_value(ms.diagonal(f.n)[static_cast<int>(f.n)]);
  }
  throw WindowError(
      "no exact closed form for this matched integral; use --rmt quadrature or --rmt mc");
}

struct RmtMode {
  enum Kind { none, exact, quadrature, mc } kind = none;
  uint64_t samples = 200000;
  uint64_t seed = 42;
  double tol = 1e-10;

  static Kind parse(const std::string& s) {
    if (s == "none") return none;
    if (s == "exact" || s == "closed-form" || s == "closed_form") return exact;
    if (s == "quadrature") return quadrature;
    if (s == "mc") return mc;
    throw WindowError("unknown rmt mode '" + s + "' (none|exact|quadrature|mc)");
  }
};

IntegralValue evaluate_matched_integral(const RmtIntegralSpec& spec, const RmtMode& mode) {
  switch (mode.kind) {
    case RmtMode::exact:
      return exact_matched_integral(spec);
    case RmtMode::quadrature:
      return weyl_quadrature(spec.group, spec.dim, spec.functional, mode.tol);
    case RmtMode::mc:
      return mc_integral(spec.group, spec.dim, spec.functional, mode.samples, mode.seed);
    default:
      throw WindowError("no rmt mode selected");
  }
}

// ---------------------------------------------------------------------------
// statistic subcommands (qr, sector, short-interval, ap)
// ---------------------------------------------------------------------------

const char* kStatCsvHeader =
    "schema,statistic,q,weight,k,n,g,sector_k,h,modulus,family_size,"
    "mean_observed,mean_closed_form,var_direct,var_chars,"
    "rmt_group,rmt_dim,rmt_prediction,ratio,seconds\n";

std::string stat_csv_row(const VarianceReport& r, const RmtComparison* cmp) {
  std::ostringstream os;
  os << kCsvSchema << "," << r.statistic << "," << r.q << ","
     << (r.weight == Weight::divisor ? "d" : "L") << "," << r.k << "," << r.n << ",";
  if (r.family == StatFamily::quadratic_residues) os << r.g;
  os << ",";
  if (r.family == StatFamily::sectors) os << r.sector_k;
  os << ",";
  if (r.family == StatFamily::short_intervals) os << r.h;
  os << ",";
  if (r.family == StatFamily::progressions) os << poly_string(r.ap_modulus);
  os << "," << r.family_size << "," << num(to_double(r.mean_observed)) << ","
     << num(to_double(r.mean_closed_form)) << "," << num(to_double(r.variance_direct))
     << "," << num(to_double(r.variance_via_characters)) << ",";
  if (cmp) {
    os << group_name(cmp->spec.group) << "," << cmp->spec.dim << ","
       << num(cmp->prediction) << "," << num(cmp->ratio);
  } else {
    os << ",,,";
  }
  os << "," << num(r.seconds) << "\n";
  return os.str();
}

json stat_results_json(const VarianceReport& r, const RmtComparison* cmp,
                       const RmtMode& mode) {
  json results;
  results["statistic"] = r.statistic;
  results["family_size"] = r.family_size;
  results["mean_observed"] = rat_json(r.mean_observed);
  results["mean_closed_form"] = rat_json(r.mean_closed_form);
  results["mean_exact_match"] = r.mean_exact_match;
  results["variance_direct"] = rat_json(r.variance_direct);
  results["variance_via_characters"] = rat_json(r.variance_via_characters);
  results["variance_exact_match"] = r.variance_exact_match;
  results["member_identities_ok"] = r.member_identities_ok;
  results["characters_complex"] = r.characters_complex;
  results["rounding_bound"] = r.rounding_bound;
  if (r.family == StatFamily::progressions) {
    results["odd_character_contribution"] = rat_json(r.ap_odd_contribution);
    results["even_character_contribution"] = rat_json(r.ap_even_contribution);
  }
  if (cmp) {
    json rmt;
    rmt["group"] = group_name(cmp->spec.group);
    rmt["dimension"] = cmp->spec.dim;
    rmt["kind"] = cmp->spec.functional.kind == SymbolKind::secular ? "secular" : "trace";
    rmt["k"] = cmp->spec.functional.k;
    rmt["n"] = cmp->spec.functional.n;
    rmt["squared"] = cmp->spec.functional.squared;
    rmt["method"] = mode.kind == RmtMode::exact        ? "exact"
                    : mode.kind == RmtMode::quadrature ? "quadrature"
                                                       : "mc";
    rmt["integral"] = integral_json(cmp->integral);
    rmt["prefactor"] = rat_json(cmp->prefactor);
    rmt["prediction"] = cmp->prediction;
    rmt["ratio"] = cmp->ratio;
    results["rmt"] = rmt;
  }
  return results;
}

bool identity_gate(const VarianceReport& r) {
  bool mean_gate = r.family == StatFamily::quadratic_residues ? true : r.mean_exact_match;
  return r.variance_exact_match && r.member_identities_ok && mean_gate;
}

int finish_statistic(const std::string& command, const std::string& name,
                     const json& config, const VarianceReport& r, const RmtMode& mode) {
  RmtComparison cmp;
  const RmtComparison* cmp_ptr = nullptr;
  if (mode.kind != RmtMode::none) {
    RmtIntegralSpec spec = expected_integral_spec(r);
    IntegralValue integral = evaluate_matched_integral(spec, mode);
    cmp = rmt_comparison(r, spec, integral);
    cmp_ptr = &cmp;
  }
  json results = stat_results_json(r, cmp_ptr, mode);
  json envelope = make_envelope(command, name, config, results, r.seconds);
  write_outputs(name, envelope, std::string(kStatCsvHeader) + stat_csv_row(r, cmp_ptr));

  std::cout << r.statistic << " q=" << r.q << " k=" << r.k << " n=" << r.n
            << ": family=" << r.family_size << " mean=" << rat_string(r.mean_observed)
            << " var_direct=" << rat_string(r.variance_direct)
            << " var_chars=" << rat_string(r.variance_via_characters)
            << (r.variance_exact_match ? " [exact match]" : " [MISMATCH]");
  if (cmp_ptr)
    std::cout << " prediction=" << num(cmp.prediction) << " ratio=" << num(cmp.ratio);
  std::cout << "\n  wrote " << name << ".report.json, " << name << ".csv\n";

  if (!identity_gate(r)) {
    std::cerr << "identity gate failed for " << r.statistic << "\n";
    return 1;
  }
  return 0;
}

// shared flags for the four statistic subcommands
struct StatArgs {
  int64_t q = 5;
  int g = 1;
  std::string weight = "d";
  int k = 2;
  int n = 2;
  int sector_k = 4;
  int l = 1;
  int nu = 2;
  int h = 1;
  std::string modulus = "T^2+T";
  std::string rmt = "none";
  uint64_t samples = 200000;
  uint64_t seed = 42;
  double tol = 1e-10;
  std::string name;
  int64_t guardrail = 0;
  std::string config_path;
};

void add_common_stat_flags(CLI::App* sub, StatArgs& a, const char* default_name) {
  a.name = default_name;
  sub->add_option("--rmt", a.rmt, "matched integral: none|exact|quadrature|mc");
  sub->add_option("--samples", a.samples, "Monte Carlo samples (--rmt mc)");
  sub->add_option("--seed", a.seed, "Monte Carlo seed (--rmt mc)");
  sub->add_option("--tol", a.tol, "quadrature tolerance (--rmt quadrature)");
  sub->add_option("--name", a.name, "output basename");
  sub->add_option("--guardrail", a.guardrail, "enumeration cap override");
  sub->add_option("--config", a.config_path, "JSON config file (explicit flags win)");
}

void overlay_common(const Overlay& ov, StatArgs& a) {
  ov.apply("--rmt", "rmt", a.rmt);
  ov.apply("--samples", "samples", a.samples);
  ov.apply("--seed", "seed", a.seed);
  ov.apply("--tol", "tol", a.tol);
  ov.apply("--name", "name", a.name);
  ov.apply("--guardrail", "guardrail", a.guardrail);
}

json common_config_json(const StatArgs& a, int64_t cap) {
  json j;
  j["rmt"] = a.rmt;
  if (a.rmt == "mc") {
    j["samples"] = a.samples;
    j["seed"] = a.seed;
  }
  if (a.rmt == "quadrature") j["tol"] = a.tol;
  j["guardrail"] = cap;
  return j;
}

// ---------------------------------------------------------------------------
// rmt subcommands
// ---------------------------------------------------------------------------

const char* kRmtCsvHeader =
    "schema,command,formula,group,dim,kind,k,n,squared,"
    "numerator,denominator,estimate,std_error,samples,seed,seconds\n";

std::string rmt_csv_row(const std::string& command, const std::string& formula,
                        const std::string& group, int64_t dim, const std::string& kind,
                        int64_t k, int64_t n, bool squared, const IntegralValue& v,
                        double seconds) {
  std::ostringstream os;
  os << kCsvSchema << "," << command << "," << formula << "," << group << "," << dim << ","
     << kind << "," << k << "," << n << "," << (squared ? 1 : 0) << ",";
  if (v.exact)
    os << numerator(v.value) << "," << denominator(v.value);
  else
    os << ",";
  os << "," << num(v.estimate) << "," << num(v.std_error) << "," << v.samples << ","
     << v.seed << "," << num(seconds) << "\n";
  return os.str();
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RmtArgs {
  std::string group = "sp";
  int64_t N = 3;
  std::string kind = "trace";
  int64_t k = 1;
  int64_t n = 2;
  bool squared = false;
  uint64_t samples = 200000;
  uint64_t seed = 42;
  double tol = 1e-10;
  std::string formula;
  int64_t j1 = 1, j2 = 1;
  std::string a_map, b_map;
  std::string profile;
  double c = 1.0;
  std::string name;
  std::string config_path;
};

int run_rmt_sampling(const std::string& command, const RmtArgs& a) {
  MatrixGroup group = parse_group(a.group);
  CompositionFunctional f{parse_kind(a.kind), a.k, a.n, a.squared};
  const auto t0 = std::chrono::steady_clock::now();
  IntegralValue v = command == "rmt-mc"
                        ? mc_integral(group, a.N, f, a.samples, a.seed)
                        : weyl_quadrature(group, a.N, f, a.tol);
  double secs = elapsed(t0);

  json config{{"group", a.group}, {"N", a.N},           {"kind", a.kind},
              {"k", a.k},         {"n", a.n},           {"squared", a.squared}};
  json results;
  results["functional"] = json{{"group", group_name(group)},
                               {"dimension", a.N},
                               {"kind", a.kind},
                               {"k", a.k},
                               {"n", a.n},
                               {"squared", a.squared}};
  results["integral"] = integral_json(v);
  if (command == "rmt-mc") {
    config["samples"] = a.samples;
    config["seed"] = a.seed;
    results["worker_seeds"] = json::array({a.seed});
    std::cout << "estimate " << num(v.estimate) << " +/- " << num(v.std_error) << " ("
              << v.samples << " samples, seed " << v.seed << ")\n";
  } else {
    config["tol"] = a.tol;
    std::cout << "quadrature value " << num(v.estimate) << "\n";
  }
  json envelope = make_envelope(command, a.name, config, results, secs);
  write_outputs(a.name, envelope,
                std::string(kRmtCsvHeader) +
                    rmt_csv_row(command, "", a.group, a.N, a.kind, a.k, a.n, a.squared, v,
                                secs));
  std::cout << "  wrote " << a.name << ".report.json, " << a.name << ".csv\n";
  return 0;
}

int run_rmt_exact(const RmtArgs& a) {
  if (a.formula.empty())
    throw WindowError("--formula is required (mr|ds|ko|bg|swap|gamma|corollary:<name>)");
  const auto t0 = std::chrono::steady_clock::now();
  IntegralValue v;
  json extra;
  std::string group_label, kind_label;
  int64_t dim = 0, k_label = 0, n_label = 0;

  if (a.formula == "mr") {
    RatSeries s = mr_determinant_series(a.k, a.N);
    BigRat coeff = a.n <= 2 * a.N * a.k ? s[static_cast<int>(a.n)] : BigRat(0);
    v = IntegralValue::exact_value(coeff);
    group_label = "symplectic";
    kind_label = "secular";
    dim = a.N;
    k_label = a.k;
    n_label = a.n;
  } else if (a.formula == "ds") {
    MatrixGroup group = parse_group(a.group);
    if (a.a_map.empty()) throw WindowError("ds needs --a (e.g. --a 1:2,2:1)");
    auto amap = parse_exponent_map(a.a_map);
    if (group == MatrixGroup::symplectic) {
      MomentSpec spec;
      spec.group = group;
      spec.N = a.N;
      spec.a = amap;
      v = ds_symplectic_moment(spec);
    } else {
      auto bmap = a.b_map.empty() ? amap : parse_exponent_map(a.b_map);
      v = ds_unitary_moment(amap, bmap, a.N);
    }
    group_label = group_name(group);
    kind_label = "trace-product";
    dim = a.N;
    extra["a"] = a.a_map;
    if (!a.b_map.empty()) extra["b"] = a.b_map;
  } else if (a.formula == "ko") {
    v = IntegralValue::exact_value(symplectic_trace_pair(a.j1, a.j2, a.N));
    group_label = "symplectic";
    kind_label = "trace-pair";
    dim = a.N;
    extra["j1"] = a.j1;
    extra["j2"] = a.j2;
  } else if (a.formula == "bg") {
    MultiSeries ms = bump_gamburd_expand(a.k, a.N, 2);
    v = IntegralValue::exact_value(ms.diagonal(a.n)[static_cast<int>(a.n)]);
    group_label = "symplectic";
    kind_label = "secular-diagonal";
    dim = a.N;
    k_label = a.k;
    n_label = a.n;
  } else if (a.formula == "swap") {
    RatSeries s = swap_series(parse_group(a.group), a.k, a.N, a.n);
    BigRat coeff = a.n <= s.order() ? s[static_cast<int>(a.n)] : BigRat(0);
    v = IntegralValue::exact_value(coeff);
    group_label = a.group;
    kind_label = "swap-series";
    dim = a.N;
    k_label = a.k;
    n_label = a.n;
  } else if (a.formula == "gamma") {
    if (!a.profile.empty()) {
      double g = gamma_closed_forms(a.profile, a.c);
      v = IntegralValue::mc_estimate(g, 0.0, 0, 0);
      kind_label = a.profile;
    } else {
      GammaEstimate est = gamma_k(a.k, a.c, a.samples, a.seed);
      v = IntegralValue::mc_estimate(est.value, est.std_error, est.samples, est.seed);
      kind_label = "gamma_k";
      k_label = a.k;
    }
    extra["c"] = a.c;
  } else if (a.formula.rfind("corollary:", 0) == 0) {
    std::string name = a.formula.substr(std::string("corollary:").size());
    v = corollary_closed_forms(name, a.n, a.N);
    group_label = name.rfind("u_", 0) == 0 ? "unitary" : "symplectic";
    kind_label = name;
    dim = a.N;
    n_label = a.n;
  } else {
    throw WindowError("unknown formula '" + a.formula +
                      "' (mr|ds|ko|bg|swap|gamma|corollary:<name>)");
  }
  double secs = elapsed(t0);

  json config{{"formula", a.formula}, {"group", a.group}, {"N", a.N},
              {"k", a.k},             {"n", a.n}};
  for (auto& [key, val] : extra.items()) config[key] = val;

  json results;
  results["formula"] = a.formula;
  results["value"] = integral_json(v);
  if (v.exact)
    std::cout << num(v.estimate) << " (" << numerator(v.value) << "/"
              << denominator(v.value) << ")\n";
  else
    std::cout << num(v.estimate)
              << (v.std_error > 0 ? " +/- " + num(v.std_error) : std::string()) << "\n";

  json envelope = make_envelope("rmt-exact", a.name, config, results, secs);
  write_outputs(a.name, envelope,
                std::string(kRmtCsvHeader) +
                    rmt_csv_row("rmt-exact", a.formula, group_label, dim, kind_label,
                                k_label, n_label, false, v, secs));
  std::cout << "  wrote " << a.name << ".report.json, " << a.name << ".csv\n";
  return 0;
}

// ---------------------------------------------------------------------------
// trend subcommand
// ---------------------------------------------------------------------------

struct TrendArgs {
  std::string family = "qr-divisor";
  std::string q_list;
  int g = 1;
  int k = 2;
  int n = 2;
  int sector_k = 4;
  int l = 1;
  int nu = 2;
  std::string modulus = "T^2+T";
  uint64_t samples = 200000;
  uint64_t seed = 42;
  std::string name = "trend";
  int64_t guardrail = 0;
  std::string config_path;
};

VarianceReport trend_point(const TrendArgs& p, int64_t q, int64_t cap) {
  if (p.family == "qr-divisor") return qr_stat(q, p.g, Weight::divisor, p.k, p.n, cap);
  if (p.family == "qr-von-mangoldt")
    return qr_stat(q, p.g, Weight::von_mangoldt, p.k, p.n, cap);
  if (p.family == "sector-divisor")
    return sector_stat(q, p.sector_k, Weight::divisor, p.l, p.nu, cap);
  if (p.family == "sector-von-mangoldt")
    return sector_stat(q, p.sector_k, Weight::von_mangoldt, p.l, p.nu, cap);
  if (p.family == "ap") return ap_stat(q, parse_poly(q, p.modulus), p.n, p.k, cap);
  throw WindowError("unknown trend family '" + p.family +
                    "' (qr-divisor|qr-von-mangoldt|sector-divisor|sector-von-mangoldt|ap)");
}

std::vector<int64_t> default_trend_qs(const std::string& family) {
  if (family.rfind("qr", 0) == 0) return {5, 13, 17, 29};
  if (family.rfind("sector", 0) == 0) return {5, 13};
  return {3, 5};
}

int run_trend(const TrendArgs& p, const json& config, int64_t cap) {
  std::vector<int64_t> qs =
      p.q_list.empty() ? default_trend_qs(p.family) : parse_int_list(p.q_list);
  if (qs.empty()) throw WindowError("trend needs at least one field size");
  json rows = json::array();
  std::string csv(kStatCsvHeader);
  bool identities_ok = true;
  double total_seconds = 0;
  IntegralValue integral;
  bool have_integral = false;
  RmtIntegralSpec spec;
  std::cout << "trend " << p.family << "\n";
  for (int64_t q : qs) {
    VarianceReport r = trend_point(p, q, cap);
    spec = expected_integral_spec(r);
    if (!have_integral) {
      // the matched integral does not depend on q; evaluate it once
      integral = spec.dim <= 3
                     ? weyl_quadrature(spec.group, spec.dim, spec.functional)
                     : mc_integral(spec.group, spec.dim, spec.functional, p.samples, p.seed);
      have_integral = true;
    }
    RmtComparison cmp = rmt_comparison(r, spec, integral);
    identities_ok = identities_ok && identity_gate(r);
    total_seconds += r.seconds;
    csv += stat_csv_row(r, &cmp);
    json row;
    row["q"] = q;
    row["variance"] = rat_json(r.variance_direct);
    row["prediction"] = cmp.prediction;
    row["ratio"] = cmp.ratio;
    rows.push_back(row);
    std::cout << "  q=" << q << ": var=" << rat_string(r.variance_direct)
              << " prediction=" << num(cmp.prediction) << " ratio=" << num(cmp.ratio)
              << "\n";
  }
  json results;
  results["family"] = p.family;
  results["rows"] = rows;
  results["matched_integral"] = integral_json(integral);
  results["rmt_group"] = group_name(spec.group);
  results["rmt_dimension"] = spec.dim;
  results["note"] =
      "ratios are informational; the identity gate covers only the exact finite-field "
      "computations";
  json envelope = make_envelope("trend", p.name, config, results, total_seconds);
  write_outputs(p.name, envelope, csv);
  std::cout << "  wrote " << p.name << ".report.json, " << p.name << ".csv\n";
  if (!identities_ok) {
    std::cerr << "identity gate failed inside the trend ladder\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify subcommand
// ---------------------------------------------------------------------------

int run_verify(const std::string& name, const std::string& suite, uint64_t seed,
               const json& config) {
  std::vector<CheckResult> results = run_suite(suite, seed);
  json rows = json::array();
  std::string csv = "schema,check,gating,pass,seconds,detail\n";
  double total = 0;
  for (const CheckResult& r : results) {
    total += r.seconds;
    std::ostringstream line;
    line << (r.pass ? "PASS" : "FAIL") << (r.gating ? "      " : " info ") << std::left
         << std::setw(16) << r.id << " (" << std::fixed << std::setprecision(2)
         << r.seconds << "s) " << r.description;
    std::cout << line.str() << "\n";
    json row;
    row["id"] = r.id;
    row["description"] = r.description;
    row["gating"] = r.gating;
    row["pass"] = r.pass;
    rows.push_back(row);
    std::ostringstream csv_line;
    csv_line << kCsvSchema << "," << r.id << "," << (r.gating ? 1 : 0) << ","
             << (r.pass ? 1 : 0) << "," << num(r.seconds) << "," << csv_escape(r.detail)
             << "\n";
    csv += csv_line.str();
  }
  bool passed = suite_passed(results);
  json summary;
  summary["checks"] = rows;
  summary["passed"] = passed;
  json envelope = make_envelope("verify", name, config, summary, total);
  write_outputs(name, envelope, csv);
  std::ostringstream tail;
  tail << (passed ? "suite passed" : "suite FAILED") << " (" << std::fixed
       << std::setprecision(2) << total << "s)";
  std::cout << tail.str() << "\n  wrote " << name << ".report.json, " << name << ".csv\n";
  return passed ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "exact variance statistics for polynomial arithmetic over small finite fields, "
      "with matched matrix-integral predictions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int rc = 0;

  // ---- qr ------------------------------------------------------------------
  {
    auto a = std::make_shared<StatArgs>();
    auto* sub = app.add_subcommand("qr", "variance over quadratic-residue classes");
    sub->add_option("--q", a->q, "field size (prime, 1 mod 4)");
    sub->add_option("--g", a->g, "genus parameter: moduli have degree 2g+1");
    sub->add_option("--weight", a->weight, "d (divisor) or L (von Mangoldt)");
    sub->add_option("--k", a->k, "weight index");
    sub->add_option("--n", a->n, "degree of the summed polynomials");
    add_common_stat_flags(sub, *a, "qr");
    sub->callback([&rc, sub, a] {
      Overlay ov{sub};
      ov.load(a->config_path);
      ov.apply("--q", "q", a->q);
      ov.apply("--g", "g", a->g);
      ov.apply("--weight", "weight", a->weight);
      ov.apply("--k", "k", a->k);
      ov.apply("--n", "n", a->n);
      overlay_common(ov, *a);
      int64_t cap = effective_guardrail(a->guardrail);
      json config = common_config_json(*a, cap);
      config["q"] = a->q;
      config["g"] = a->g;
      config["weight"] = a->weight;
      config["k"] = a->k;
      config["n"] = a->n;
      VarianceReport r = qr_stat(a->q, a->g, parse_weight(a->weight), a->k, a->n, cap);
      rc = finish_statistic("qr", a->name, config, r,
                            RmtMode{RmtMode::parse(a->rmt), a->samples, a->seed, a->tol});
    });
  }

  // ---- sector ----------------------------------------------------------------
  {
    auto a = std::make_shared<StatArgs>();
    a->q = 5;
    a->weight = "d";
    a->k = 1;
    auto* sub = app.add_subcommand("sector", "variance over direction sectors");
    sub->add_option("--q", a->q, "field size (odd prime)");
    sub->add_option("--sector-k", a->sector_k, "angular resolution (even, = 2 kappa)");
    sub->add_option("--weight", a->weight, "d (divisor) or L (von Mangoldt)");
    sub->add_option("--l", a->l, "weight index");
    sub->add_option("--nu", a->nu, "degree of the summed polynomials");
    add_common_stat_flags(sub, *a, "sector");
    sub->callback([&rc, sub, a] {
      Overlay ov{sub};
      ov.load(a->config_path);
      ov.apply("--q", "q", a->q);
      ov.apply("--sector-k", "sector-k", a->sector_k);
      ov.apply("--weight", "weight", a->weight);
      ov.apply("--l", "l", a->l);
      ov.apply("--nu", "nu", a->nu);
      overlay_common(ov, *a);
      int64_t cap = effective_guardrail(a->guardrail);
      json config = common_config_json(*a, cap);
      config["q"] = a->q;
      config["sector-k"] = a->sector_k;
      config["weight"] = a->weight;
      config["l"] = a->l;
      config["nu"] = a->nu;
      VarianceReport r =
          sector_stat(a->q, a->sector_k, parse_weight(a->weight), a->l, a->nu, cap);
      rc = finish_statistic("sector", a->name, config, r,
                            RmtMode{RmtMode::parse(a->rmt), a->samples, a->seed, a->tol});
    });
  }

  // ---- short-interval --------------------------------------------------------
  {
    auto a = std::make_shared<StatArgs>();
    a->q = 3;
    a->n = 4;
    a->h = 1;
    a->k = 1;
    auto* sub = app.add_subcommand("short-interval", "variance over short intervals");
    // --h is the interval parameter, so the help flag keeps only its long form
    sub->set_help_flag("--help", "print help");
    sub->add_option("--q", a->q, "field size (prime)");
    sub->add_option("--n", a->n, "degree of the summed polynomials");
    sub->add_option("--h", a->h, "interval radius exponent");
    sub->add_option("--k", a->k, "von Mangoldt convolution index");
    add_common_stat_flags(sub, *a, "short-interval");
    sub->callback([&rc, sub, a] {
      Overlay ov{sub};
      ov.load(a->config_path);
      ov.apply("--q", "q", a->q);
      ov.apply("--n", "n", a->n);
      ov.apply("--h", "h", a->h);
      ov.apply("--k", "k", a->k);
      overlay_common(ov, *a);
      int64_t cap = effective_guardrail(a->guardrail);
      json config = common_config_json(*a, cap);
      config["q"] = a->q;
      config["n"] = a->n;
      config["h"] = a->h;
      config["k"] = a->k;
      VarianceReport r = short_interval_stat(a->q, a->n, a->h, a->k, cap);
      rc = finish_statistic("short-interval", a->name, config, r,
                            RmtMode{RmtMode::parse(a->rmt), a->samples, a->seed, a->tol});
    });
  }

  // ---- ap --------------------------------------------------------------------
  {
    auto a = std::make_shared<StatArgs>();
    a->q = 3;
    a->n = 3;
    a->k = 1;
    auto* sub = app.add_subcommand("ap", "variance over arithmetic progressions");
    sub->add_option("--q", a->q, "field size (prime)");
    sub->add_option("--modulus", a->modulus, "squarefree monic modulus, e.g. T^2+T");
    sub->add_option("--n", a->n, "degree of the summed polynomials");
    sub->add_option("--k", a->k, "von Mangoldt convolution index");
    add_common_stat_flags(sub, *a, "ap");
    sub->callback([&rc, sub, a] {
      Overlay ov{sub};
      ov.load(a->config_path);
      ov.apply("--q", "q", a->q);
      ov.apply("--modulus", "modulus", a->modulus);
      ov.apply("--n", "n", a->n);
      ov.apply("--k", "k", a->k);
      overlay_common(ov, *a);
      int64_t cap = effective_guardrail(a->guardrail);
      json config = common_config_json(*a, cap);
      config["q"] = a->q;
      config["modulus"] = a->modulus;
      config["n"] = a->n;
      config["k"] = a->k;
      VarianceReport r = ap_stat(a->q, parse_poly(a->q, a->modulus), a->n, a->k, cap);
      rc = finish_statistic("ap", a->name, config, r,
                            RmtMode{RmtMode::parse(a->rmt), a->samples, a->seed, a->tol});
    });
  }

  // ---- rmt -------------------------------------------------------------------
  {
    auto* rmt = app.add_subcommand("rmt", "matrix integrals on their own");
    rmt->require_subcommand(1);

    auto add_functional_flags = [](CLI::App* sub, RmtArgs& a) {
      sub->add_option("--group", a.group, "u (unitary) or sp (symplectic)");
      sub->add_option("--N", a.N, "group dimension parameter");
      sub->add_option("--kind", a.kind, "secular or trace");
      sub->add_option("--k", a.k, "composition length");
      sub->add_option("--n", a.n, "composition weight");
      sub->add_flag("--squared", a.squared, "absolute square of the composition sum");
      sub->add_option("--name", a.name, "output basename");
      sub->add_option("--config", a.config_path, "JSON config file (explicit flags win)");
    };
    auto overlay_functional = [](CLI::App* sub, RmtArgs& a) {
      Overlay ov{sub};
      ov.load(a.config_path);
      ov.apply("--group", "group", a.group);
      ov.apply("--N", "N", a.N);
      ov.apply("--kind", "kind", a.kind);
      ov.apply("--k", "k", a.k);
      ov.apply("--n", "n", a.n);
      ov.apply("--squared", "squared", a.squared);
      ov.apply("--name", "name", a.name);
      return ov;
    };

    {
      auto a = std::make_shared<RmtArgs>();
      a->name = "rmt-mc";
      auto* sub = rmt->add_subcommand("mc", "Monte Carlo matrix integral");
      add_functional_flags(sub, *a);
      sub->add_option("--samples", a->samples, "sample count");
      sub->add_option("--seed", a->seed, "seed");
      sub->callback([&rc, sub, a, overlay_functional] {
        Overlay ov = overlay_functional(sub, *a);
        ov.apply("--samples", "samples", a->samples);
        ov.apply("--seed", "seed", a->seed);
        rc = run_rmt_sampling("rmt-mc", *a);
      });
    }
    {
      auto a = std::make_shared<RmtArgs>();
      a->name = "rmt-quadrature";
      a->N = 1;
      auto* sub = rmt->add_subcommand("quadrature", "deterministic eigenangle quadrature");
      add_functional_flags(sub, *a);
      sub->add_option("--tol", a->tol, "refinement tolerance");
      sub->callback([&rc, sub, a, overlay_functional] {
        Overlay ov = overlay_functional(sub, *a);
        ov.apply("--tol", "tol", a->tol);
        rc = run_rmt_sampling("rmt-quadrature", *a);
      });
    }
    {
      auto a = std::make_shared<RmtArgs>();
      a->name = "rmt-exact";
      a->k = 2;
      a->N = 8;
      a->n = 4;
      auto* sub = rmt->add_subcommand("exact", "exact closed forms and series");
      sub->add_option("--formula", a->formula,
                      "mr|ds|ko|bg|swap|gamma|corollary:<name> (e.g. corollary:sp_l2)");
      sub->add_option("--group", a->group, "u or sp (ds, swap)");
      sub->add_option("--N", a->N, "group dimension parameter");
      sub->add_option("--k", a->k, "series index / composition length");
      sub->add_option("--n", a->n, "coefficient / weight");
      sub->add_option("--j1", a->j1, "first trace power (ko)");
      sub->add_option("--j2", a->j2, "second trace power (ko)");
      sub->add_option("--a", a->a_map, "exponent map j:a,... (ds)");
      sub->add_option("--b", a->b_map, "conjugate exponent map (ds, unitary)");
      sub->add_option("--profile", a->profile, "limiting profile name (gamma)");
      sub->add_option("--c", a->c, "scaled argument (gamma)");
      sub->add_option("--samples", a->samples, "samples (gamma, k = 3)");
      sub->add_option("--seed", a->seed, "seed (gamma, k = 3)");
      sub->add_option("--name", a->name, "output basename");
      sub->add_option("--config", a->config_path, "JSON config file (explicit flags win)");
      sub->callback([&rc, sub, a] {
        Overlay ov{sub};
        ov.load(a->config_path);
        ov.apply("--formula", "formula", a->formula);
        ov.apply("--group", "group", a->group);
        ov.apply("--N", "N", a->N);
        ov.apply("--k", "k", a->k);
        ov.apply("--n", "n", a->n);
        ov.apply("--j1", "j1", a->j1);
        ov.apply("--j2", "j2", a->j2);
        ov.apply("--a", "a", a->a_map);
        ov.apply("--b", "b", a->b_map);
        ov.apply("--profile", "profile", a->profile);
        ov.apply("--c", "c", a->c);
        ov.apply("--samples", "samples", a->samples);
        ov.apply("--seed", "seed", a->seed);
        ov.apply("--name", "name", a->name);
        rc = run_rmt_exact(*a);
      });
    }
  }

  // ---- trend -----------------------------------------------------------------
  {
    auto a = std::make_shared<TrendArgs>();
    auto* sub = app.add_subcommand(
        "trend", "variance-to-prediction ratios across a ladder of field sizes");
    sub->add_option("--family", a->family,
                    "qr-divisor|qr-von-mangoldt|sector-divisor|sector-von-mangoldt|ap");
    sub->add_option("--q-list", a->q_list, "comma-separated field sizes");
    sub->add_option("--g", a->g, "genus parameter (qr)");
    sub->add_option("--k", a->k, "weight index (qr, ap)");
    sub->add_option("--n", a->n, "summed degree (qr, ap)");
    sub->add_option("--sector-k", a->sector_k, "angular resolution (sector)");
    sub->add_option("--l", a->l, "weight index (sector)");
    sub->add_option("--nu", a->nu, "summed degree (sector)");
    sub->add_option("--modulus", a->modulus, "progression modulus (ap)");
    sub->add_option("--samples", a->samples, "Monte Carlo samples when dimension > 3");
    sub->add_option("--seed", a->seed, "Monte Carlo seed");
    sub->add_option("--name", a->name, "output basename");
    sub->add_option("--guardrail", a->guardrail, "enumeration cap override");
    sub->add_option("--config", a->config_path, "JSON config file (explicit flags win)");
    sub->callback([&rc, sub, a] {
      Overlay ov{sub};
      ov.load(a->config_path);
      ov.apply("--family", "family", a->family);
      ov.apply("--q-list", "q-list", a->q_list);
      ov.apply("--g", "g", a->g);
      ov.apply("--k", "k", a->k);
      ov.apply("--n", "n", a->n);
      ov.apply("--sector-k", "sector-k", a->sector_k);
      ov.apply("--l", "l", a->l);
      ov.apply("--nu", "nu", a->nu);
      ov.apply("--modulus", "modulus", a->modulus);
      ov.apply("--samples", "samples", a->samples);
      ov.apply("--seed", "seed", a->seed);
      ov.apply("--name", "name", a->name);
      ov.apply("--guardrail", "guardrail", a->guardrail);
      int64_t cap = effective_guardrail(a->guardrail);
      json config{{"family", a->family},
                  {"q-list", a->q_list.empty() ? json() : json(a->q_list)},
                  {"g", a->g},
                  {"k", a->k},
                  {"n", a->n},
                  {"sector-k", a->sector_k},
                  {"l", a->l},
                  {"nu", a->nu},
                  {"modulus", a->modulus},
                  {"samples", a->samples},
                  {"seed", a->seed},
                  {"guardrail", cap}};
      rc = run_trend(*a, config, cap);
    });
  }

  // ---- verify ----------------------------------------------------------------
  {
    auto a = std::make_shared<std::tuple<std::string, uint64_t, std::string, std::string>>(
        "all", 42, "verify", "");
    auto* sub = app.add_subcommand("verify", "acceptance suite");
    sub->add_option("--suite", std::get<0>(*a), "all|fast|<check id>");
    sub->add_option("--seed", std::get<1>(*a), "seed for the stochastic checks");
    sub->add_option("--name", std::get<2>(*a), "output basename");
    sub->add_option("--config", std::get<3>(*a), "JSON config file (explicit flags win)");
    sub->callback([&rc, sub, a] {
      auto& [suite, seed, name, cfgpath] = *a;
      Overlay ov{sub};
      ov.load(cfgpath);
      ov.apply("--suite", "suite", suite);
      ov.apply("--seed", "seed", seed);
      ov.apply("--name", "name", name);
      json config{{"suite", suite}, {"seed", seed}};
      rc = run_verify(name, suite, seed, config);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const WindowError& e) {
    std::cerr << "window violation: " << e.what() << "\n";
    return 2;
  } catch (const GuardrailError& e) {
    std::cerr << "guardrail exceeded: " << e.what() << "\n";
    return 3;
  } catch (const IdentityError& e) {
    std::cerr << "identity failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
