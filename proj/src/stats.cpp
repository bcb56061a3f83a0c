#include "ffvar/stats.hpp"

#include <chrono>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/cyclotomic.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/sectors.hpp"
#include "ffvar/series.hpp"

namespace ffvar {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool is_prime_i64(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

BigInt q_power(int64_t q, int e) { return int_pow(BigInt(q), e); }

BigRat rat(const BigInt& num, const BigInt& den) { return BigRat(num, den); }

// tally with every exponent shifted by sh (mod the tally order)
ExpTally shifted(const ExpTally& t, int64_t sh) {
  const int e = t.order();
  const int s = static_cast<int>(((sh % e) + e) % e);
  ExpTally r(e);
  for (int j = 0; j < e; ++j)
    if (t.tally(j) != 0) r.add(j + s, t.tally(j));
  return r;
}

WeightSpec weight_spec(Weight w, int k) {
  WeightSpec s;
  s.kind = (w == Weight::divisor) ? WeightSpec::divisor : WeightSpec::von_mangoldt;
  s.k = k;
  return s;
}

// all weights w(f) for f in M_n, indexed by enumeration index
std::vector<BigInt> monic_weights(int64_t q, int n, Weight w, int k, int64_t guardrail) {
  const int64_t count = monic_count(q, n, guardrail);
  std::vector<BigInt> out(static_cast<size_t>(count));
  for (int64_t m = 0; m < count; ++m)
    out[static_cast<size_t>(m)] = weight_value(factor(monic_at(q, n, m)), w, k);
  return out;
}

// variance of integer counts about their family average:
//   (1/F) sum_v (N_v - total/F)^2  =  sum_v (F N_v - total)^2 / F^3
BigRat centered_variance(const std::vector<BigInt>& counts, const BigInt& total) {
  const BigInt f(static_cast<int64_t>(counts.size()));
  BigInt dev(0);
  for (const BigInt& c : counts) {
    BigInt t = f * c - total;
    dev += t * t;
  }
  return rat(dev, f * f * f);
}

}  // namespace

std::string stat_family_name(StatFamily family, Weight w) {
  std::string base;
  switch (family) {
    case StatFamily::quadratic_residues: base = "qr"; break;
    case StatFamily::sectors: base = "sector"; break;
    case StatFamily::short_intervals: base = "short-interval"; break;
    case StatFamily::progressions: base = "ap"; break;
  }
  return base + (w == Weight::divisor ? "-divisor" : "-von-mangoldt");
}

// ----------------------------------------------------------------------
// quadratic residue classes
// ----------------------------------------------------------------------

VarianceReport qr_stat(int64_t q, int g, Weight w, int k, int n, int64_t guardrail) {
  const auto t0 = Clock::now();
  if (!is_prime_i64(q) || q % 4 != 1)
    throw WindowError("qr_stat: q must be a prime with q = 1 mod 4");
  if (g < 1) throw WindowError("qr_stat: g must be >= 1");
  if (k < 1) throw WindowError("qr_stat: weight index k must be >= 1");
  if (n < 0) throw WindowError("qr_stat: n must be >= 0");
  if (w == Weight::divisor && n > 2 * g * k)
    throw WindowError("qr_stat: divisor weight needs n <= 2gk");
  if (w == Weight::von_mangoldt && k > n)
    throw WindowError("qr_stat: von Mangoldt weight needs k <= n");

  const int d = 2 * g + 1;
  const int64_t nf = monic_count(q, n, guardrail);
  const int64_t np = count_irreducibles(q, d);
  if (np > 0 && nf > 0 && np > guardrail / nf)
    throw GuardrailError("qr_stat: family sweep of " + std::to_string(np) + " x " +
                         std::to_string(nf) + " pairs exceeds guardrail");

  VarianceReport r;
  r.family = StatFamily::quadratic_residues;
  r.weight = w;
  r.statistic = stat_family_name(r.family, w);
  r.q = q;
  r.k = k;
  r.n = n;
  r.g = g;

  std::vector<Poly> fs;
  fs.reserve(static_cast<size_t>(nf));
  for (int64_t m = 0; m < nf; ++m) fs.push_back(monic_at(q, n, m));
  const std::vector<BigInt> wv = monic_weights(q, n, w, k, guardrail);

  const BigInt main2 = (w == Weight::divisor) ? total_divisor_sum_coprime_P(q, n, k, d)
                                              : total_vm_sum_coprime_P(q, n, k, d);

  const std::vector<Poly> primes = irreducibles(q, d, guardrail);
  BigInt sum2s(0), dev2(0), m2(0);
  bool members_ok = true;
  for (const Poly& p : primes) {
    BigInt s(0), msum(0), coprime(0);
    for (int64_t i = 0; i < nf; ++i) {
      const BigInt& wt = wv[static_cast<size_t>(i)];
      if (wt == 0) continue;
      const int sym = jacobi_reciprocity(fs[static_cast<size_t>(i)], p);
      if (sym == 0) continue;
      coprime += wt;
      if (sym > 0) {
        s += wt;
        msum += wt;
      } else {
        msum -= wt;
      }
    }
    if (coprime != main2) members_ok = false;        // closed form for the coprime sum
    if (BigInt(2) * s != main2 + msum) members_ok = false;  // the two-term identity
    sum2s += BigInt(2) * s;
    const BigInt t = BigInt(2) * s - main2;
    dev2 += t * t;
    m2 += msum * msum;
  }

  const BigInt fam(np);
  r.family_size = np;
  r.mean_observed = rat(sum2s, BigInt(2) * fam);
  r.mean_closed_form = rat(main2, BigInt(2));
  r.mean_exact_match = (r.mean_observed == r.mean_closed_form);
  r.variance_direct = rat(dev2, BigInt(4) * fam);
  r.variance_via_characters = rat(m2, BigInt(4) * fam);
  r.variance_exact_match = (r.variance_direct == r.variance_via_characters);
  r.member_identities_ok = members_ok;
  r.characters_complex = false;
  r.rounding_bound = 0.0;
  r.seconds = seconds_since(t0);
  return r;
}

// ----------------------------------------------------------------------
// sectors
// ----------------------------------------------------------------------

VarianceReport sector_stat(int64_t q, int sector_k, Weight w, int ell, int nu,
                           int64_t guardrail) {
  const auto t0 = Clock::now();
  if (!is_prime_i64(q) || q % 2 == 0)
    throw WindowError("sector_stat: q must be an odd prime");
  if (sector_k < 2 || sector_k % 2 != 0)
    throw WindowError("sector_stat: resolution k must be even and >= 2");
  if (ell < 1) throw WindowError("sector_stat: weight index ell must be >= 1");
  if (nu < 0) throw WindowError("sector_stat: nu must be >= 0");
  const int kappa = sector_k / 2;
  // the divisor window bound is vacuous at the coarsest resolution kappa = 1
  if (w == Weight::divisor && kappa >= 2 && nu > ell * (2 * kappa - 2))
    throw WindowError("sector_stat: divisor weight needs nu <= ell(2 kappa - 2)");
  if (w == Weight::von_mangoldt && ell > nu)
    throw WindowError("sector_stat: von Mangoldt weight needs ell <= nu");

  VarianceReport r;
  r.family = StatFamily::sectors;
  r.weight = w;
  r.statistic = stat_family_name(r.family, w);
  r.q = q;
  r.k = ell;
  r.n = nu;
  r.sector_k = sector_k;

  SectorGroup sg(q, sector_k, guardrail);
  const int64_t ns = sg.sector_count();
  r.family_size = ns;

  const int64_t nf = monic_count(q, nu, guardrail);
  std::vector<BigInt> counts(static_cast<size_t>(ns), BigInt(0));
  BigInt total(0);
  for (int64_t m = 0; m < nf; ++m) {
    const Poly f = monic_at(q, nu, m);
    if (f.coeff(0) == 0) continue;
    const BigInt wt = weight_value(factor(f), w, ell);
    if (wt == 0) continue;
    counts[static_cast<size_t>(sg.sector_of(f))] += wt;
    total += wt;
  }

  const BigInt closed = (w == Weight::divisor) ? total_divisor_sum_coprime_P(q, nu, ell, 1)
                                               : total_vm_sum_unit_coprime(q, nu, ell);
  r.mean_observed = rat(total, BigInt(ns));
  r.mean_closed_form = rat(closed, BigInt(ns));
  r.mean_exact_match = (r.mean_observed == r.mean_closed_form);
  r.variance_direct = centered_variance(counts, total);

  const int e = static_cast<int>(sg.exponent());
  ExpTally acc(e);
  std::vector<ExpTally> inverted(static_cast<size_t>(ns), ExpTally(e));
  bool members_ok = true;
  for (int64_t xi_index = 0; xi_index < ns; ++xi_index) {
    const SectorGroup::Char xi = sg.character(xi_index);
    const ExpTally m0 = coeff_sum(q, nu, weight_spec(w, ell), supereven_char_eval(sg, xi),
                                  /*zero_excluded=*/true, guardrail);
    if (sg.is_trivial(xi)) {
      if (m0.to_integer() != total) members_ok = false;
    } else {
      acc = acc + m0.norm_squared();
    }
    for (int64_t v = 0; v < ns; ++v)
      inverted[static_cast<size_t>(v)] =
          inverted[static_cast<size_t>(v)] +
          shifted(m0, -sg.eval_norm_one(xi, sg.elements()[static_cast<size_t>(v)]));
  }
  for (int64_t v = 0; v < ns; ++v)
    if (inverted[static_cast<size_t>(v)].to_integer() != BigInt(ns) * counts[static_cast<size_t>(v)])
      members_ok = false;

  r.variance_via_characters = rat(acc.to_integer(), BigInt(ns) * BigInt(ns));
  r.variance_exact_match = (r.variance_direct == r.variance_via_characters);
  r.member_identities_ok = members_ok;
  r.characters_complex = e > 2;
  r.rounding_bound = 0.0;
  r.seconds = seconds_since(t0);
  return r;
}

// ----------------------------------------------------------------------
// short intervals
// ----------------------------------------------------------------------

VarianceReport short_interval_stat(int64_t q, int n, int h, int k, int64_t guardrail) {
  const auto t0 = Clock::now();
  if (!is_prime_i64(q)) throw WindowError("short_interval_stat: q must be prime");
  if (h < 0 || h > n - 2) throw WindowError("short_interval_stat: needs 0 <= h <= n-2");
  if (k < 1 || k > n) throw WindowError("short_interval_stat: needs 1 <= k <= n");

  VarianceReport r;
  r.family = StatFamily::short_intervals;
  r.weight = Weight::von_mangoldt;
  r.statistic = stat_family_name(r.family, r.weight);
  r.q = q;
  r.k = k;
  r.n = n;
  r.h = h;

  const int m = n - h;       // character modulus T^m
  const int nb = n - h - 1;  // intervals are indexed by B in M_nb
  const int64_t fam = monic_count(q, nb, guardrail);
  r.family_size = fam;

  const int64_t nf = monic_count(q, n, guardrail);
  std::vector<BigInt> counts(static_cast<size_t>(fam), BigInt(0));
  BigInt total(0);
  for (int64_t mf = 0; mf < nf; ++mf) {
    const Poly f = monic_at(q, n, mf);
    if (f.coeff(0) == 0) continue;
    const BigInt wt = weight_value(factor(f), Weight::von_mangoldt, k);
    if (wt == 0) continue;
    int64_t bidx = 0;  // enumeration index of B = (f - f mod T^{h+1}) / T^{h+1}
    for (int i = n - 1; i >= h + 1; --i) bidx = bidx * q + f.coeff(i);
    counts[static_cast<size_t>(bidx)] += wt;
    total += wt;
  }

  const BigInt closed = total_vm_sum_unit_coprime(q, n, k);
  r.mean_observed = rat(total, BigInt(fam));
  r.mean_closed_form = rat(closed, BigInt(fam));
  r.mean_exact_match = (r.mean_observed == r.mean_closed_form);
  r.variance_direct = centered_variance(counts, total);

  std::vector<int64_t> tb(static_cast<size_t>(m) + 1, 0);
  tb[static_cast<size_t>(m)] = 1;
  const Poly tpow(q, std::vector<int64_t>(tb.begin(), tb.end()));
  CharGroup group(q, tpow, guardrail);
  const int e = static_cast<int>(group.exponent());
  ExpTally acc(e);
  std::vector<ExpTally> inverted(static_cast<size_t>(fam), ExpTally(e));
  bool members_ok = true;
  int64_t even_seen = 0;
  for (int64_t ci = 0; ci < group.char_count(); ++ci) {
    const CharGroup::Char chi = group.character(ci);
    if (!group.is_even(chi)) continue;
    ++even_seen;
    const ExpTally m0 = coeff_sum(q, n, weight_spec(Weight::von_mangoldt, k),
                                  dirichlet_char_eval(group, chi),
                                  /*zero_excluded=*/true, guardrail);
    if (group.is_trivial(chi)) {
      if (m0.to_integer() != closed) members_ok = false;
    } else {
      acc = acc + m0.norm_squared();
    }
    for (int64_t b = 0; b < fam; ++b) {
      const Poly bstar = monic_at(q, nb, b).star();
      int64_t ex = 0;
      if (!group.eval(chi, bstar, &ex)) {
        members_ok = false;
        continue;
      }
      inverted[static_cast<size_t>(b)] = inverted[static_cast<size_t>(b)] + shifted(m0, -ex);
    }
  }
  if (even_seen != group.even_char_count() || even_seen != fam) members_ok = false;
  for (int64_t b = 0; b < fam; ++b)
    if (inverted[static_cast<size_t>(b)].to_integer() != BigInt(fam) * counts[static_cast<size_t>(b)])
      members_ok = false;

  r.variance_via_characters = rat(acc.to_integer(), BigInt(fam) * BigInt(fam));
  r.variance_exact_match = (r.variance_direct == r.variance_via_characters);
  r.member_identities_ok = members_ok;
  r.characters_complex = e > 2;
  r.rounding_bound = 0.0;
  r.seconds = seconds_since(t0);
  return r;
}

// ----------------------------------------------------------------------
// arithmetic progressions
// ----------------------------------------------------------------------

BigInt coprime_vm_sum(int64_t q, int n, int k, const std::vector<int>& prime_degrees) {
  // [u^n] ( qu/(1-qu) - sum_d d u^d/(1-u^d) )^k
  RatSeries base(n + 1);
  BigRat qp(1);
  for (int m = 1; m <= n; ++m) {
    qp *= q;
    base.at(m) = qp;
  }
  for (int d : prime_degrees)
    for (int m = d; m <= n; m += d) base.at(m) -= d;
  const BigRat c = base.pow(k)[n];
  if (denominator(c) != 1)
    throw IdentityError("coprime_vm_sum: series coefficient is not an integer");
  return numerator(c);
}

VarianceReport ap_stat(int64_t q, const Poly& modulus, int n, int k, int64_t guardrail) {
  const auto t0 = Clock::now();
  if (!is_prime_i64(q)) throw WindowError("ap_stat: q must be prime");
  if (modulus.q() != q) throw WindowError("ap_stat: modulus is over a different field");
  const Poly mod_monic = modulus.monic();
  if (mod_monic.deg() < 1) throw WindowError("ap_stat: modulus must have positive degree");
  const Factorization mf = factor(mod_monic);
  std::vector<int> pdegs;
  for (const auto& [p, e] : mf.factors) {
    if (e > 1) throw WindowError("ap_stat: modulus must be squarefree");
    pdegs.push_back(p.deg());
  }
  if (k < 1 || k > n) throw WindowError("ap_stat: needs 1 <= k <= n");

  VarianceReport r;
  r.family = StatFamily::progressions;
  r.weight = Weight::von_mangoldt;
  r.statistic = stat_family_name(r.family, r.weight);
  r.q = q;
  r.k = k;
  r.n = n;
  r.ap_modulus = mod_monic;

  CharGroup group(q, mod_monic, guardrail);
  const int64_t phi = group.unit_count();
  r.family_size = phi;

  std::unordered_map<Poly, int64_t, PolyHash> unit_index;
  for (int64_t i = 0; i < phi; ++i) unit_index.emplace(group.units()[static_cast<size_t>(i)], i);

  const int64_t nf = monic_count(q, n, guardrail);
  std::vector<BigInt> counts(static_cast<size_t>(phi), BigInt(0));
  BigInt total(0);
  for (int64_t mi = 0; mi < nf; ++mi) {
    const Poly f = monic_at(q, n, mi);
    const BigInt wt = weight_value(factor(f), Weight::von_mangoldt, k);
    if (wt == 0) continue;
    const auto it = unit_index.find(f % mod_monic);
    if (it == unit_index.end()) continue;  // not coprime to the modulus
    counts[static_cast<size_t>(it->second)] += wt;
    total += wt;
  }

  const BigInt closed = coprime_vm_sum(q, n, k, pdegs);
  r.mean_observed = rat(total, BigInt(phi));
  r.mean_closed_form = rat(closed, BigInt(phi));
  r.mean_exact_match = (r.mean_observed == r.mean_closed_form);
  r.variance_direct = centered_variance(counts, total);

  const int e = static_cast<int>(group.exponent());
  ExpTally acc_even(e), acc_odd(e);
  std::vector<ExpTally> inverted(static_cast<size_t>(phi), ExpTally(e));
  bool members_ok = true;
  for (int64_t ci = 0; ci < phi; ++ci) {
    const CharGroup::Char chi = group.character(ci);
    const ExpTally msum = coeff_sum(q, n, weight_spec(Weight::von_mangoldt, k),
                                    dirichlet_char_eval(group, chi),
                                    /*zero_excluded=*/false, guardrail);
    if (group.is_trivial(chi)) {
      if (msum.to_integer() != total) members_ok = false;
    } else if (group.is_even(chi)) {
      acc_even = acc_even + msum.norm_squared();
    } else {
      acc_odd = acc_odd + msum.norm_squared();
    }
    for (int64_t a = 0; a < phi; ++a)
      inverted[static_cast<size_t>(a)] =
          inverted[static_cast<size_t>(a)] +
          shifted(msum, -group.eval_unit(chi, group.units()[static_cast<size_t>(a)]));
  }
  for (int64_t a = 0; a < phi; ++a)
    if (inverted[static_cast<size_t>(a)].to_integer() != BigInt(phi) * counts[static_cast<size_t>(a)])
      members_ok = false;

  const BigInt odd_part = acc_odd.to_integer();
  const BigInt even_part = acc_even.to_integer();
  const BigInt phi2 = BigInt(phi) * BigInt(phi);
  r.ap_odd_contribution = rat(odd_part, phi2);
  r.ap_even_contribution = rat(even_part, phi2);
  r.variance_via_characters = rat(odd_part + even_part, phi2);
  r.variance_exact_match = (r.variance_direct == r.variance_via_characters);
  r.member_identities_ok = members_ok;
  r.characters_complex = e > 2;
  r.rounding_bound = 0.0;
  r.seconds = seconds_since(t0);
  return r;
}

// ----------------------------------------------------------------------
// involution
// ----------------------------------------------------------------------

Poly involution_star(const Poly& f) {
  if (f.is_zero() || f.coeff(0) == 0)
    throw WindowError("involution_star: requires f(0) != 0");
  return f.star();
}

// ----------------------------------------------------------------------
// random-matrix pairing
// ----------------------------------------------------------------------

RmtIntegralSpec expected_integral_spec(const VarianceReport& r) {
  RmtIntegralSpec s;
  s.functional.k = r.k;
  s.functional.n = r.n;
  s.functional.squared = true;
  switch (r.family) {
    case StatFamily::quadratic_residues:
      s.group = MatrixGroup::symplectic;
      s.dim = r.g;
      s.functional.kind = (r.weight == Weight::divisor) ? SymbolKind::secular : SymbolKind::trace;
      break;
    case StatFamily::sectors:
      s.group = MatrixGroup::symplectic;
      s.dim = r.sector_k / 2 - 1;
      s.functional.kind = (r.weight == Weight::divisor) ? SymbolKind::secular : SymbolKind::trace;
      break;
    case StatFamily::short_intervals:
      s.group = MatrixGroup::unitary;
      s.dim = r.n - r.h - 2;
      s.functional.kind = SymbolKind::trace;
      break;
    case StatFamily::progressions:
      s.group = MatrixGroup::unitary;
      s.dim = r.ap_modulus.deg() - 1;
      s.functional.kind = SymbolKind::trace;
      break;
  }
  return s;
}

BigRat rmt_prefactor(const VarianceReport& r) {
  switch (r.family) {
    case StatFamily::quadratic_residues:
      return rat(q_power(r.q, r.n), BigInt(4));
    case StatFamily::sectors:
      return rat(q_power(r.q, r.n), q_power(r.q, r.sector_k / 2));
    case StatFamily::short_intervals:
      return BigRat(q_power(r.q, r.h + 1));
    case StatFamily::progressions:
      return rat(q_power(r.q, r.n), q_power(r.q, r.ap_modulus.deg()));
  }
  throw WindowError("rmt_prefactor: unknown family");
}

RmtComparison rmt_comparison(const VarianceReport& r, const RmtIntegralSpec& spec,
                             const IntegralValue& integral) {
  const RmtIntegralSpec want = expected_integral_spec(r);
  if (spec.group != want.group || spec.dim != want.dim ||
      spec.functional.kind != want.functional.kind || spec.functional.k != want.functional.k ||
      spec.functional.n != want.functional.n || spec.functional.squared != want.functional.squared)
    throw WindowError("rmt_comparison: integral does not match the statistic's pairing");
  RmtComparison c;
  c.spec = spec;
  c.prefactor = rmt_prefactor(r);
  c.integral = integral;
  const double iv = integral.exact ? to_double(integral.value) : integral.estimate;
  c.prediction = to_double(c.prefactor) * iv;
  c.ratio = (c.prediction != 0.0) ? to_double(r.variance_direct) / c.prediction : 0.0;
  return c;
}

}  // namespace ffvar
