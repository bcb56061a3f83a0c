#include "ffvar/lfunction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ffvar/errors.hpp"

namespace ffvar {

namespace {

using CVec = std::vector<std::complex<double>>;

// truncated product of dense complex polynomials
CVec cmul(const CVec& a, const CVec& b, int max_n) {
  CVec r(static_cast<size_t>(max_n) + 1, {0.0, 0.0});
  for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(max_n); ++i) {
    if (a[i] == std::complex<double>(0.0, 0.0)) continue;
    for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(max_n); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

CVec cpow(const CVec& a, int k, int max_n) {
  CVec r{{1.0, 0.0}};
  for (int i = 0; i < k; ++i) r = cmul(r, a, max_n);
  return r;
}

double q_half_pow(int64_t q, int n) { return std::pow(static_cast<double>(q), 0.5 * n); }

}  // namespace

// ----------------------------------------------------------------------
// evaluators
// ----------------------------------------------------------------------

CharEval quadratic_char_eval(const Poly& p) {
  CharEval e;
  e.order = 2;
  e.eval = [p](const Poly& f, int64_t* ex) {
    const int v = jacobi(f, p);
    if (v == 0) return false;
    *ex = (v == 1) ? 0 : 1;
    return true;
  };
  return e;
}

CharEval dirichlet_char_eval(const CharGroup& g, const CharGroup::Char& chi) {
  CharEval e;
  e.order = static_cast<int>(g.structure().exponent);
  e.nontrivial = !g.is_trivial(chi);
  e.eval = [&g, chi](const Poly& f, int64_t* ex) { return g.eval(chi, f, ex); };
  return e;
}

CharEval supereven_char_eval(const SectorGroup& g, const SectorGroup::Char& xi) {
  CharEval e;
  e.order = static_cast<int>(g.exponent());
  e.nontrivial = !g.is_trivial(xi);
  e.eval = [&g, xi](const Poly& f, int64_t* ex) { return g.eval(xi, f, ex); };
  return e;
}

// ----------------------------------------------------------------------
// coefficient sums
// ----------------------------------------------------------------------

BigInt weighted_value(const WeightSpec& w, const Factorization& fac) {
  switch (w.kind) {
    case WeightSpec::unit:
      return BigInt(1);
    case WeightSpec::divisor:
      return divisor_k(fac, w.k);
    case WeightSpec::von_mangoldt:
      return vm_k(fac, w.k);
  }
  return BigInt(0);
}

ExpTally coeff_sum(int64_t q, int n, const WeightSpec& w, const CharEval& chi,
                   bool zero_excluded, int64_t guardrail) {
  ExpTally tally(chi.order);
  const int64_t count = monic_count(q, n, guardrail);
  for (int64_t m = 0; m < count; ++m) {
    const Poly f = monic_at(q, n, m);
    if (zero_excluded && f.constant_term() == 0) continue;
    int64_t ex = 0;
    if (!chi.eval(f, &ex)) continue;
    if (w.kind == WeightSpec::unit) {
      tally.add(static_cast<int>(ex), BigInt(1));
    } else {
      const BigInt wv = weighted_value(w, factor(f));
      if (wv != 0) tally.add(static_cast<int>(ex), wv);
    }
  }
  return tally;
}

// ----------------------------------------------------------------------
// L-polynomials
// ----------------------------------------------------------------------

LPolynomial l_polynomial(int64_t q, int max_deg, const CharEval& chi, int64_t guardrail) {
  LPolynomial l;
  l.q = q;
  for (int n = 0; n <= max_deg; ++n)
    l.c.push_back(coeff_sum(q, n, WeightSpec{WeightSpec::unit, 1}, chi, false, guardrail));
  if (l.c[0].to_integer() != 1)
    throw IdentityError("L-polynomial constant coefficient differs from 1");
  return l;
}

LPolynomial l_polynomial_quadratic(const Poly& p, int64_t guardrail) {
  if (!is_irreducible(p)) throw std::invalid_argument("l_polynomial_quadratic: P not irreducible");
  return l_polynomial(p.q(), p.deg() - 1, quadratic_char_eval(p), guardrail);
}

LPolynomial l_polynomial_dirichlet(const CharGroup& g, const CharGroup::Char& chi,
                                   int64_t guardrail) {
  if (g.is_trivial(chi))
    throw std::invalid_argument("l_polynomial_dirichlet: character must be nontrivial");
  return l_polynomial(g.q(), g.modulus().deg() - 1, dirichlet_char_eval(g, chi), guardrail);
}

LPolynomial l_polynomial_supereven(const SectorGroup& g, const SectorGroup::Char& xi,
                                   int64_t guardrail) {
  if (g.is_trivial(xi))
    throw std::invalid_argument("l_polynomial_supereven: character must be nontrivial");
  return l_polynomial(g.q(), g.swan_conductor(xi), supereven_char_eval(g, xi), guardrail);
}

std::vector<ExpTally> l_power_coeffs(const LPolynomial& l, int k, int max_n) {
  const int e = l.c[0].order();
  std::vector<ExpTally> r(static_cast<size_t>(max_n) + 1, ExpTally(e));
  r[0].add(0, BigInt(1));
  for (int pass = 0; pass < k; ++pass) {
    std::vector<ExpTally> nxt(static_cast<size_t>(max_n) + 1, ExpTally(e));
    for (int i = 0; i <= max_n; ++i) {
      if (r[static_cast<size_t>(i)].is_zero()) continue;
      for (int j = 0; i + j <= max_n && j <= l.degree(); ++j)
        nxt[static_cast<size_t>(i + j)] =
            nxt[static_cast<size_t>(i + j)] + r[static_cast<size_t>(i)] * l.c[static_cast<size_t>(j)];
    }
    r = std::move(nxt);
  }
  return r;
}

std::vector<ExpTally> log_derivative_power_coeffs(const LPolynomial& l, int k, int max_n) {
  const int e = l.c[0].order();
  // a_n = n c_n - sum_{i=1}^{n-1} c_i a_{n-i}, with c_i = 0 beyond deg L
  std::vector<ExpTally> a(static_cast<size_t>(max_n) + 1, ExpTally(e));
  for (int n = 1; n <= max_n; ++n) {
    ExpTally acc(e);
    if (n <= l.degree()) acc = l.c[static_cast<size_t>(n)].scaled(BigInt(n));
    for (int i = 1; i <= n - 1 && i <= l.degree(); ++i)
      acc = acc - l.c[static_cast<size_t>(i)] * a[static_cast<size_t>(n - i)];
    a[static_cast<size_t>(n)] = acc;
  }
  // convolution power of A(u) = sum_{n >= 1} a_n u^n
  std::vector<ExpTally> r(static_cast<size_t>(max_n) + 1, ExpTally(e));
  r[0].add(0, BigInt(1));
  for (int pass = 0; pass < k; ++pass) {
    std::vector<ExpTally> nxt(static_cast<size_t>(max_n) + 1, ExpTally(e));
    for (int i = 0; i <= max_n; ++i) {
      if (r[static_cast<size_t>(i)].is_zero()) continue;
      for (int j = 1; i + j <= max_n; ++j)
        nxt[static_cast<size_t>(i + j)] =
            nxt[static_cast<size_t>(i + j)] + r[static_cast<size_t>(i)] * a[static_cast<size_t>(j)];
    }
    r = std::move(nxt);
  }
  return r;
}

// ----------------------------------------------------------------------
// spectrum
// ----------------------------------------------------------------------

std::complex<double> FrobeniusSpectrum::trace(int m) const {
  std::complex<double> s(0.0, 0.0);
  for (double th : angles) s += std::complex<double>(std::cos(m * th), std::sin(m * th));
  return s;
}

FrobeniusSpectrum frobenius_spectrum(const LPolynomial& l, int trivial_zeros, double rh_tol) {
  // drop trailing coefficients that vanish as algebraic numbers (imprimitive
  // characters have true degree below the generic bound)
  std::vector<ExpTally> c = l.c;
  while (c.size() > 1 && c.back().is_zero_algebraic()) c.pop_back();

  // peel the trivial zeros at u = 1 exactly: each division by (1 - u) turns
  // the coefficients into partial sums and requires L(1) = 0 in Z[zeta_E]
  auto tally_sum = [](const std::vector<ExpTally>& v) {
    ExpTally s(v[0].order());
    for (const ExpTally& x : v) s = s + x;
    return s;
  };
  int detected = 0;
  while (c.size() > 1 && tally_sum(c).is_zero_algebraic()) {
    std::vector<ExpTally> nc;
    ExpTally run(c[0].order());
    for (size_t j = 0; j + 1 < c.size(); ++j) {
      run = run + c[j];
      nc.push_back(run);
    }
    c = std::move(nc);
    ++detected;
  }
  if (trivial_zeros < 0) trivial_zeros = detected;
  if (detected != trivial_zeros)
    throw IdentityError("trivial zero count at u = 1 differs from the expected parity");

  CVec b;
  b.reserve(c.size());
  for (const ExpTally& t : c) b.push_back(t.to_complex());

  FrobeniusSpectrum fs;
  fs.trivial_zeros = trivial_zeros;
  fs.dimension = static_cast<int>(b.size()) - 1;
  const int n = fs.dimension;

  // unitarize: Btilde(v) = B(v / sqrt q) has all roots on the unit circle;
  // the rescaling doubles as exact diagonal balancing for the companion matrix
  CVec bt(b.size());
  for (size_t j = 0; j < b.size(); ++j) bt[j] = b[j] / q_half_pow(l.q, static_cast<int>(j));
  fs.secular.resize(b.size());
  for (size_t j = 0; j < b.size(); ++j) fs.secular[j] = ((j % 2) ? -1.0 : 1.0) * bt[j];

  if (n > 0) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -bt[static_cast<size_t>(i)] / bt[static_cast<size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw IdentityError("eigenvalue iteration failed on the unitarized L-polynomial");
    for (int i = 0; i < n; ++i) {
      const std::complex<double> v = es.eigenvalues()(i);  // v = e^{-i theta}
      fs.rh_residual = std::max(fs.rh_residual, std::abs(std::abs(v) - 1.0));
      fs.angles.push_back(-std::arg(v));
    }
    std::sort(fs.angles.begin(), fs.angles.end());
    if (fs.rh_residual > rh_tol)
      throw IdentityError("unitarized inverse root leaves the unit circle");
  }
  return fs;
}

// ----------------------------------------------------------------------
// spectral composition sums
// ----------------------------------------------------------------------

std::complex<double> spectral_secular_sum(const FrobeniusSpectrum& s, int64_t q, int n, int k) {
  const CVec p = cpow(s.secular, k, n);
  const double sign = (n % 2) ? -1.0 : 1.0;
  return sign * q_half_pow(q, n) * p[static_cast<size_t>(n)];
}

std::complex<double> spectral_trace_sum(const FrobeniusSpectrum& s, int64_t q, int n, int k) {
  CVec tr(static_cast<size_t>(n) + 1, {0.0, 0.0});
  for (int m = 1; m <= n; ++m) tr[static_cast<size_t>(m)] = s.trace(m);
  const CVec p = cpow(tr, k, n);
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * q_half_pow(q, n) * p[static_cast<size_t>(n)];
}

std::complex<double> spectral_secular_sum_full(const FrobeniusSpectrum& s, int64_t q, int n,
                                               int k) {
  // [u^n] ((1-u)^lambda det(1 - u sqrt q Theta))^k
  CVec base(s.secular.size());
  for (size_t j = 0; j < s.secular.size(); ++j)
    base[j] = ((j % 2) ? -1.0 : 1.0) * s.secular[j] * q_half_pow(q, static_cast<int>(j));
  for (int t = 0; t < s.trivial_zeros; ++t) {
    CVec nb(base.size() + 1, {0.0, 0.0});
    for (size_t j = 0; j < base.size(); ++j) {
      nb[j] += base[j];
      nb[j + 1] -= base[j];
    }
    base = std::move(nb);
  }
  return cpow(base, k, n)[static_cast<size_t>(n)];
}

std::complex<double> spectral_trace_sum_full(const FrobeniusSpectrum& s, int64_t q, int n, int k) {
  // a_m = -(lambda + q^{m/2} Tr Theta^m); value is [u^n] A(u)^k
  CVec a(static_cast<size_t>(n) + 1, {0.0, 0.0});
  for (int m = 1; m <= n; ++m)
    a[static_cast<size_t>(m)] =
        -(static_cast<double>(s.trivial_zeros) + q_half_pow(q, m) * s.trace(m));
  return cpow(a, k, n)[static_cast<size_t>(n)];
}

// ----------------------------------------------------------------------
// three-way checks
// ----------------------------------------------------------------------

namespace {

IdentityCheck three_way(int64_t q, int n, int k, const LPolynomial& l, const CharEval& chi,
                        int trivial_zeros, bool trace_channel, int64_t guardrail) {
  IdentityCheck r;
  r.n = n;
  r.k = k;

  const WeightSpec w{trace_channel ? WeightSpec::von_mangoldt : WeightSpec::divisor, k};
  const ExpTally direct = coeff_sum(q, n, w, chi, false, guardrail);
  const std::vector<ExpTally> series = trace_channel ? log_derivative_power_coeffs(l, k, n)
                                                     : l_power_coeffs(l, k, n);
  r.exact_match = direct.equals(series[static_cast<size_t>(n)]);
  r.exact_value = direct.to_complex();

  const FrobeniusSpectrum fs = frobenius_spectrum(l, trivial_zeros);
  r.spectral_value = trace_channel ? spectral_trace_sum(fs, q, n, k)
                                   : spectral_secular_sum(fs, q, n, k);
  r.spectral_err = std::abs(r.exact_value - r.spectral_value);

  const double tight = 1e-6 * q_half_pow(q, n);
  r.allowance = tight;
  if (fs.trivial_zeros > 0) {
    const int delta = fs.dimension + fs.trivial_zeros;  // true degree of L
    r.even_slack_used = true;
    r.allowance += 10.0 * std::pow(to_double(binomial(delta, delta / 2)), k) *
                   q_half_pow(q, n - 1);
  }
  const std::complex<double> full = trace_channel ? spectral_trace_sum_full(fs, q, n, k)
                                                  : spectral_secular_sum_full(fs, q, n, k);
  r.full_err = std::abs(r.exact_value - full);
  r.ok = r.exact_match && r.spectral_err <= r.allowance && r.full_err <= tight;
  return r;
}

}  // namespace

IdentityCheck verify_secular_identity(int64_t q, int n, int k, const LPolynomial& l,
                                      const CharEval& chi, int trivial_zeros, int64_t guardrail) {
  return three_way(q, n, k, l, chi, trivial_zeros, /*trace_channel=*/false, guardrail);
}

IdentityCheck verify_trace_identity(int64_t q, int n, int k, const LPolynomial& l,
                                    const CharEval& chi, int trivial_zeros, int64_t guardrail) {
  return three_way(q, n, k, l, chi, trivial_zeros, /*trace_channel=*/true, guardrail);
}

}  // namespace ffvar
