#include "ffvar/exact_rmt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>

#include "ffvar/quadrature.hpp"

namespace ffvar {

namespace {

// strips zero exponents so that multiset comparison is well defined
std::map<int64_t, int64_t> normalized(const std::map<int64_t, int64_t>& a) {
  std::map<int64_t, int64_t> r;
  for (const auto& [j, e] : a)
    if (e != 0) r[j] = e;
  return r;
}

// per-power symplectic moment factor g_j(a)
BigInt g_factor(int64_t j, int64_t a) {
  if (j % 2 == 1) {
    if (a % 2 == 1) return 0;
    return int_pow(BigInt(j), a / 2) * double_factorial(a - 1);
  }
  BigInt s = 0;
  for (int64_t l = 0; 2 * l <= a; ++l) s += binomial(a, 2 * l) * int_pow(BigInt(j), l) * double_factorial(2 * l - 1);
  return s;
}

// partitions of n into exactly k parts >= 1, nonincreasing order
void partitions_rec(int64_t n, int64_t k, int64_t maxp, std::vector<int64_t>& cur,
                    const std::function<void(const std::vector<int64_t>&)>& fn) {
  if (k == 0) {
    if (n == 0) fn(cur);
    return;
  }
  int64_t hi = std::min(maxp, n - (k - 1));
  for (int64_t p = hi; p >= 1 && p * k >= n; --p) {
    cur.push_back(p);
    partitions_rec(n - p, k - 1, p, cur, fn);
    cur.pop_back();
  }
}

void for_each_partition(int64_t n, int64_t k,
                        const std::function<void(const std::vector<int64_t>&)>& fn) {
  if (n < 0 || k < 0) return;
  std::vector<int64_t> cur;
  partitions_rec(n, k, n, cur, fn);
}

std::map<int64_t, int64_t> part_counts(const std::vector<int64_t>& parts) {
  std::map<int64_t, int64_t> a;
  for (int64_t p : parts) ++a[p];
  return a;
}

// number of ordered compositions realizing the part multiset: k! / prod a_j!
BigInt composition_multiplicity(const std::map<int64_t, int64_t>& a) {
  int64_t k = 0;
  for (const auto& [j, e] : a) k += e;
  BigInt m = factorial(k);
  for (const auto& [j, e] : a) m /= factorial(e);
  return m;
}

BigInt ds_symplectic_value(const std::map<int64_t, int64_t>& a) {
  BigInt v = 1;
  for (const auto& [j, e] : a) {
    BigInt g = g_factor(j, e);
    if (((j - 1) * e) % 2 == 1) g = -g;
    v *= g;
    if (v == 0) break;
  }
  return v;
}

BigInt ds_unitary_diag_value(const std::map<int64_t, int64_t>& a) {
  BigInt v = 1;
  for (const auto& [j, e] : a) v *= int_pow(BigInt(j), e) * factorial(e);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// product moment rules
// ---------------------------------------------------------------------------

int64_t MomentSpec::weight() const {
  int64_t w = 0;
  for (const auto& [j, e] : a) w += j * e;
  return w;
}

IntegralValue ds_symplectic_moment(const MomentSpec& spec) {
  if (spec.group != MatrixGroup::symplectic)
    throw WindowError("ds_symplectic_moment: spec must carry the symplectic tag");
  for (const auto& [j, e] : spec.a)
    if (j < 1 || e < 0) throw WindowError("ds_symplectic_moment: powers must be >= 1");
  std::map<int64_t, int64_t> a = normalized(spec.a);
  MomentSpec s = spec;
  s.a = a;
  return IntegralValue::exact_value(BigRat(ds_symplectic_value(a)), spec.N >= s.weight());
}

IntegralValue ds_unitary_moment(const std::map<int64_t, int64_t>& a,
                                const std::map<int64_t, int64_t>& b, int64_t N) {
  std::map<int64_t, int64_t> an = normalized(a), bn = normalized(b);
  for (const auto& m : {an, bn})
    for (const auto& [j, e] : m)
      if (j < 1 || e < 0) throw WindowError("ds_unitary_moment: powers must be >= 1");
  int64_t wa = 0, wb = 0;
  for (const auto& [j, e] : an) wa += j * e;
  for (const auto& [j, e] : bn) wb += j * e;
  bool window = N >= std::max(wa, wb);
  if (an != bn) return IntegralValue::exact_value(BigRat(0), window);
  return IntegralValue::exact_value(BigRat(ds_unitary_diag_value(an)), window);
}

BigRat symplectic_trace_mean(int64_t j, int64_t N) {
  j = std::llabs(j);
  if (j == 0) return BigRat(2 * N);
  if (j <= 2 * N && j % 2 == 0) return BigRat(-1);
  return BigRat(0);
}

BigRat symplectic_trace_pair(int64_t j1, int64_t j2, int64_t N) {
  j1 = std::llabs(j1);
  j2 = std::llabs(j2);
  if (j1 == 0 && j2 == 0) return BigRat(4 * N * N);
  if (j1 == 0) return BigRat(2 * N) * symplectic_trace_mean(j2, N);
  if (j2 == 0) return BigRat(2 * N) * symplectic_trace_mean(j1, N);
  if (j1 > j2) std::swap(j1, j2);
  BigRat v = 0;
  if (j1 == j2) {
    v += (j1 <= 2 * N) ? BigRat(j1) : BigRat(2 * N);
    if (N + 1 <= j1 && j1 <= 2 * N) v -= 1;
  }
  if (j1 % 2 == 0 && j2 % 2 == 0 && j2 <= 2 * N) v += 1;
  if (j1 != j2 && (j2 - j1) % 2 == 0) {
    int64_t m = (j2 - j1) / 2, half_sum = (j1 + j2) / 2;
    if (1 <= m && m <= N && half_sum >= N + 1) v -= 1;
  }
  return v;
}

BigInt de_trace_covariance(int64_t j, int64_t N) {
  if (j < 1 || N < 1) throw WindowError("de_trace_covariance: j and N must be >= 1");
  return BigInt(std::min(j, N));
}

BigInt de_trace_covariance_printed(int64_t j, int64_t N) {
  if (j < 1 || N < 1) throw WindowError("de_trace_covariance: j and N must be >= 1");
  return BigInt(std::max(j, N));
}

// ---------------------------------------------------------------------------
// composition sums
// ---------------------------------------------------------------------------

IntegralValue composition_moment_sums(CompositionKind kind, int64_t k, int64_t n, int64_t N) {
  if (k < 1 || n < 0 || N < 1)
    throw WindowError("composition_moment_sums: need k >= 1, n >= 0, N >= 1");

  BigInt total = 0;
  switch (kind) {
    case CompositionKind::symplectic: {
      for_each_partition(n, k, [&](const std::vector<int64_t>& parts) {
        std::map<int64_t, int64_t> a = part_counts(parts);
        total += composition_multiplicity(a) * ds_symplectic_value(a);
      });
      return IntegralValue::exact_value(BigRat(total), N >= n);
    }
    case CompositionKind::symplectic_squared: {
      // expand the square: cross terms of every pair of part multisets
      std::vector<std::map<int64_t, int64_t>> parts_list;
      for_each_partition(n, k, [&](const std::vector<int64_t>& parts) {
        parts_list.push_back(part_counts(parts));
      });
      for (const auto& pa : parts_list)
        for (const auto& pb : parts_list) {
          std::map<int64_t, int64_t> merged = pa;
          for (const auto& [j, e] : pb) merged[j] += e;
          total += composition_multiplicity(pa) * composition_multiplicity(pb) *
                   ds_symplectic_value(merged);
        }
      return IntegralValue::exact_value(BigRat(total), N >= 2 * n);
    }
    case CompositionKind::unitary_squared: {
      // cross terms between distinct part multisets vanish, so the double
      // sum collapses to the diagonal with a squared multiplicity
      for_each_partition(n, k, [&](const std::vector<int64_t>& parts) {
        std::map<int64_t, int64_t> a = part_counts(parts);
        BigInt m = composition_multiplicity(a);
        total += m * m * ds_unitary_diag_value(a);
      });
      return IntegralValue::exact_value(BigRat(total), N >= n);
    }
  }
  throw WindowError("composition_moment_sums: unknown kind");
}

BigInt int_unit_literal(int64_t n, int64_t k) {
  BigInt total = 0;
  for_each_partition(n, k, [&](const std::vector<int64_t>& parts) {
    total += ds_unitary_diag_value(part_counts(parts));
  });
  return total;
}

BigInt int_unit_corrected(int64_t n, int64_t k) {
  BigInt total = 0;
  for_each_partition(n, k, [&](const std::vector<int64_t>& parts) {
    std::map<int64_t, int64_t> a = part_counts(parts);
    BigInt m = composition_multiplicity(a);
    total += m * m * ds_unitary_diag_value(a);
  });
  return total;
}

// ---------------------------------------------------------------------------
// determinant generating series
// ---------------------------------------------------------------------------

namespace {

// exact division by (1 - x^2); throws if a remainder is left
std::vector<BigRat> div_one_minus_x2(const std::vector<BigRat>& a) {
  int64_t D = static_cast<int64_t>(a.size()) - 1;
  if (D < 2) {
    for (const BigRat& c : a)
      if (c != 0)
        throw IdentityError("determinant series: division by (1-x^2) left a remainder");
    return {BigRat(0)};
  }
  std::vector<BigRat> q(D - 1, BigRat(0));  // degrees 0 .. D-2
  for (int64_t d = D; d >= 2; --d) {
    BigRat qd = (d <= D - 2) ? q[d] : BigRat(0);
    q[d - 2] = qd - a[d];
  }
  BigRat r0 = a[0] - q[0];
  BigRat r1 = a[1] - ((D - 2 >= 1) ? q[1] : BigRat(0));
  if (r0 != 0 || r1 != 0)
    throw IdentityError("determinant series: division by (1-x^2) left a remainder");
  return q;
}

int perm_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

RatSeries mr_determinant_series(int64_t k, int64_t N) {
  if (k < 1 || k > 4 || N < 1 || N > 16)
    throw GuardrailError("mr_determinant_series: supported range is 1 <= k <= 4, 1 <= N <= 16");
  const int order = static_cast<int>(2 * N * k + k * (k + 1));  // numerator degree

  // entry(i, j) for 1-based indices
  auto entry = [&](int64_t i, int64_t j) {
    RatSeries e(order);
    BigInt c1 = binomial(j - 1, i - 1);
    if (c1 != 0) e.at(static_cast<int>(j - i)) += BigRat(c1);
    BigInt c2 = binomial(2 * N + 2 * k + 1 - j, i - 1);
    int64_t ex = 2 * N + 2 * k + 2 - j - i;
    if (c2 != 0 && ex <= order) e.at(static_cast<int>(ex)) -= BigRat(c2);
    return e;
  };

  RatSeries det(order);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    RatSeries prod = RatSeries::one(order);
    for (int64_t i = 0; i < k; ++i) prod = prod * entry(i + 1, perm[i] + 1);
    det = (perm_sign(perm) > 0) ? det + prod : det - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<BigRat> coeffs(order + 1);
  for (int i = 0; i <= order; ++i) coeffs[i] = det[i];
  for (int64_t b = 0; b < k * (k + 1) / 2; ++b) coeffs = div_one_minus_x2(coeffs);

  const int final_order = static_cast<int>(2 * N * k);
  if (static_cast<int>(coeffs.size()) != final_order + 1)
    throw IdentityError("determinant series: unexpected quotient degree");
  RatSeries result(final_order);
  for (int i = 0; i <= final_order; ++i) result.at(i) = coeffs[i];
  return result;
}

// ---------------------------------------------------------------------------
// autocorrelation expansion
// ---------------------------------------------------------------------------

namespace {

using Expo = std::array<int, 4>;

// dense exponent tensor in up to four formal variables
struct Tensor {
  int m;
  Expo ext{};
  std::array<size_t, 4> stride{};
  std::vector<BigRat> v;

  Tensor(int m_, const Expo& e) : m(m_), ext(e) {
    size_t sz = 1;
    for (int s = m - 1; s >= 0; --s) {
      stride[s] = sz;
      sz *= static_cast<size_t>(ext[s] + 1);
    }
    v.assign(sz, BigRat(0));
  }

  size_t idx(const Expo& e) const {
    size_t i = 0;
    for (int s = 0; s < m; ++s) i += stride[s] * static_cast<size_t>(e[s]);
    return i;
  }

  Expo decode(size_t flat) const {
    Expo e{};
    for (int s = 0; s < m; ++s) {
      e[s] = static_cast<int>((flat / stride[s]) % static_cast<size_t>(ext[s] + 1));
    }
    return e;
  }
};

// multiply by (cA * z^a + cB * z^b); terms overflowing the extents signal a bug
Tensor tensor_mul_binomial(const Tensor& t, const BigRat& cA, const Expo& a, const BigRat& cB,
                           const Expo& b, bool second_term) {
  Tensor r(t.m, t.ext);
  for (size_t f = 0; f < t.v.size(); ++f) {
    if (t.v[f] == 0) continue;
    Expo e = t.decode(f);
    if (cA != 0) {
      Expo ea = e;
      for (int s = 0; s < t.m; ++s) {
        ea[s] += a[s];
        if (ea[s] > t.ext[s]) throw IdentityError("autocorrelation expansion: exponent overflow");
      }
      r.v[r.idx(ea)] += cA * t.v[f];
    }
    if (second_term && cB != 0) {
      Expo eb = e;
      for (int s = 0; s < t.m; ++s) {
        eb[s] += b[s];
        if (eb[s] > t.ext[s]) throw IdentityError("autocorrelation expansion: exponent overflow");
      }
      r.v[r.idx(eb)] += cB * t.v[f];
    }
  }
  return r;
}

// exact synthetic division by (z_t - z_s), using A_e = Q_{e-1} - z_s Q_e on
// the z_t coefficient slices, computed descending; the e = 0 slice must
// satisfy A_0 + z_s Q_0 = 0 or the division was not exact
Tensor tensor_div_diff(const Tensor& a, int s, int t) {
  Tensor out(a.m, a.ext);
  const size_t stride_t = a.stride[t];
  const size_t stride_s = a.stride[s];

  std::vector<size_t> base_indices;  // all flat indices with z_t exponent 0
  for (size_t f = 0; f < a.v.size(); ++f) {
    if (a.decode(f)[t] == 0) base_indices.push_back(f);
  }

  for (int64_t e = a.ext[t]; e >= 1; --e) {
    for (size_t b : base_indices) {
      size_t src = b + stride_t * static_cast<size_t>(e);
      BigRat qv = a.v[src];  // A_e contribution
      Expo ex = a.decode(b);
      if (ex[s] >= 1) qv += out.v[src - stride_s];  // z_s * Q_e contribution
      if (ex[s] == a.ext[s] && out.v[src] != 0)
        throw IdentityError("autocorrelation expansion: pole division overflow");
      out.v[src - stride_t] = qv;  // Q_{e-1}
    }
  }
  for (size_t b : base_indices) {
    BigRat r = a.v[b];
    if (a.decode(b)[s] >= 1) r += out.v[b - stride_s];
    if (r != 0)
      throw IdentityError("autocorrelation expansion: pole factor does not divide exactly");
  }
  return out;
}

// divide by (1 - z^u) for a monomial u (unit constant term): Q[e] = A[e] + Q[e-u]
Tensor tensor_div_unit(const Tensor& a, const Expo& u) {
  Tensor q(a.m, a.ext);
  for (size_t f = 0; f < a.v.size(); ++f) {
    Expo e = a.decode(f);
    BigRat val = a.v[f];
    bool ok = true;
    Expo eu = e;
    for (int s = 0; s < a.m; ++s) {
      eu[s] -= u[s];
      if (eu[s] < 0) {
        ok = false;
        break;
      }
    }
    if (ok) val += q.v[q.idx(eu)];
    q.v[f] = val;
  }
  return q;
}

}  // namespace

BigRat bump_gamburd_epsilon_sum(const std::vector<BigRat>& x, int64_t N) {
  const int m = static_cast<int>(x.size());
  if (m < 1 || m > 6) throw WindowError("bump_gamburd_epsilon_sum: need 1..6 coordinates");
  if (N < 1) throw WindowError("bump_gamburd_epsilon_sum: need N >= 1");
  for (const BigRat& xv : x)
    if (xv == 0) throw WindowError("bump_gamburd_epsilon_sum: coordinates must be nonzero");

  auto rat_pow = [](const BigRat& base, int64_t e) {
    BigRat r = 1;
    BigRat b = (e >= 0) ? base : BigRat(denominator(base), numerator(base));
    for (int64_t i = std::llabs(e); i > 0; --i) r *= b;
    return r;
  };

  BigRat total = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> eps(m);
    for (int s = 0; s < m; ++s) eps[s] = (mask >> s) & 1 ? -1 : 1;
    BigRat term = 1;
    for (int s = 0; s < m; ++s) term *= rat_pow(x[s], N * (1 - eps[s]));
    for (int s = 0; s < m; ++s)
      for (int t = s; t < m; ++t) {
        BigRat f = BigRat(1) - rat_pow(x[s], eps[s]) * rat_pow(x[t], eps[t]);
        if (f == 0)
          throw WindowError("bump_gamburd_epsilon_sum: singular coordinates (equal or reciprocal)");
        term /= f;
      }
    total += term;
  }
  return total;
}

MultiSeries bump_gamburd_expand(int64_t k, int64_t N, int64_t var_count) {
  if (k < 1 || k > 2) throw WindowError("bump_gamburd_expand: k must be 1 or 2");
  if (var_count < 1 || k * var_count > 4)
    throw WindowError("bump_gamburd_expand: need 1 <= var_count and k * var_count <= 4");
  const int m = static_cast<int>(k * var_count);
  if (N < 1 || N > 16 || (m == 4 && N > 8))
    throw GuardrailError("bump_gamburd_expand: N out of supported range");

  // extents: z^{2N} flip monomial + diagonal correction + one unit per pair
  // (correction and missing factor each raise a slot exponent by at most one)
  Expo ext{};
  for (int s = 0; s < m; ++s) ext[s] = static_cast<int>(2 * N + 2 + 2 * (m - 1));

  Tensor acc(m, ext);
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::array<int, 4> eps{};
    for (int s = 0; s < m; ++s) eps[s] = (mask >> s) & 1 ? -1 : 1;

    // starting monomial with folded diagonal corrections
    Expo e0{};
    BigRat sign = 1;
    for (int s = 0; s < m; ++s) {
      if (eps[s] == -1) {
        e0[s] = static_cast<int>(2 * N + 2);  // z^{2N} * z^2 correction
        sign = -sign;
      }
    }
    Tensor term(m, ext);
    term.v[term.idx(e0)] = sign;

    for (int s = 0; s < m; ++s)
      for (int t = s + 1; t < m; ++t) {
        Expo a{}, b{};
        if (eps[s] == 1 && eps[t] == 1) {
          // factor 1/(1-z_s z_t); missing pole factor (z_t - z_s)
          a[t] = 1;
          b[s] = 1;
          term = tensor_mul_binomial(term, BigRat(1), a, BigRat(-1), b, true);
        } else if (eps[s] == -1 && eps[t] == -1) {
          // correction -z_s z_t, then missing pole factor (z_t - z_s)
          Expo c{};
          c[s] = 1;
          c[t] = 1;
          term = tensor_mul_binomial(term, BigRat(-1), c, BigRat(0), c, false);
          a[t] = 1;
          b[s] = 1;
          term = tensor_mul_binomial(term, BigRat(1), a, BigRat(-1), b, true);
        } else if (eps[s] == 1 && eps[t] == -1) {
          // correction z_t, then missing unit factor (1 - z_s z_t)
          Expo c{};
          c[t] = 1;
          term = tensor_mul_binomial(term, BigRat(1), c, BigRat(0), c, false);
          Expo u{};
          u[s] = 1;
          u[t] = 1;
          term = tensor_mul_binomial(term, BigRat(1), Expo{}, BigRat(-1), u, true);
        } else {
          // correction -z_s, then missing unit factor (1 - z_s z_t)
          Expo c{};
          c[s] = 1;
          term = tensor_mul_binomial(term, BigRat(-1), c, BigRat(0), c, false);
          Expo u{};
          u[s] = 1;
          u[t] = 1;
          term = tensor_mul_binomial(term, BigRat(1), Expo{}, BigRat(-1), u, true);
        }
      }

    for (size_t f = 0; f < acc.v.size(); ++f) acc.v[f] += term.v[f];
  }

  // remove the pole factors (z_t - z_s) by exact synthetic division
  for (int s = 0; s < m; ++s)
    for (int t = s + 1; t < m; ++t) acc = tensor_div_diff(acc, s, t);

  // remove the unit factors (1 - z_s^2) and (1 - z_s z_t) by series division
  for (int s = 0; s < m; ++s) {
    Expo u{};
    u[s] = 2;
    acc = tensor_div_unit(acc, u);
  }
  for (int s = 0; s < m; ++s)
    for (int t = s + 1; t < m; ++t) {
      Expo u{};
      u[s] = 1;
      u[t] = 1;
      acc = tensor_div_unit(acc, u);
    }

  // fold slots into variables: slot s belongs to variable s / k
  MultiSeries out;
  out.var_count = var_count;
  const int64_t per_var_degree = 2 * N * k;
  for (size_t f = 0; f < acc.v.size(); ++f) {
    if (acc.v[f] == 0) continue;
    Expo e = acc.decode(f);
    std::vector<int64_t> key(var_count, 0);
    for (int s = 0; s < m; ++s) key[s / k] += e[s];
    bool in_range = true;
    for (int64_t d : key)
      if (d > per_var_degree) in_range = false;
    if (!in_range)
      throw IdentityError("autocorrelation expansion: residue beyond the polynomial degree");
    out.c[key] += acc.v[f];
  }
  for (auto it = out.c.begin(); it != out.c.end();) {
    if (it->second == 0)
      it = out.c.erase(it);
    else
      ++it;
  }
  return out;
}

RatSeries MultiSeries::diagonal(int64_t max_order) const {
  RatSeries r(static_cast<int>(max_order));
  for (const auto& [key, coeff] : c) {
    bool diag = true;
    for (int64_t e : key)
      if (e != key[0]) diag = false;
    if (diag && key[0] <= max_order) r.at(static_cast<int>(key[0])) += coeff;
  }
  return r;
}

RatSeries MultiSeries::specialize_equal(int64_t max_order) const {
  RatSeries r(static_cast<int>(max_order));
  for (const auto& [key, coeff] : c) {
    int64_t total = 0;
    for (int64_t e : key) total += e;
    if (total <= max_order) r.at(static_cast<int>(total)) += coeff;
  }
  return r;
}

// ---------------------------------------------------------------------------
// swap-term series
// ---------------------------------------------------------------------------

RatSeries sp_zero_swap_series(int64_t k, int64_t max_order) {
  if (k < 1) throw WindowError("sp_zero_swap_series: need k >= 1");
  RatSeries s(static_cast<int>(max_order));
  for (int64_t n = 1; 2 * n <= max_order; ++n) {
    BigInt c = 0;
    for (int64_t sp = 0; 2 * sp <= k; ++sp)
      c += binomial(n + sp - 1, n + sp - k) * binomial(k, 2 * sp) * double_factorial(2 * sp - 1);
    if (k % 2 == 1) c = -c;
    s.at(static_cast<int>(2 * n)) = BigRat(c);
  }
  return s;
}

BigRat unitary_zero_swap_printed(int64_t n) {
  BigRat v = BigRat(n * (4 * n * n + 3 * n - 4), 24);
  BigRat parity = BigRat(n * n, 8);
  return (n % 2 == 0) ? BigRat(v + parity) : BigRat(v - parity);
}

BigRat unitary_f_direct(int64_t n, int64_t N) {
  // sum over the trace-difference index of lattice-point counts
  auto count = [](int64_t s) -> int64_t {
    if (s < 4) return 0;
    if (s % 2 == 0) return ((s - 2) / 2) * ((s - 2) / 2);
    return ((s - 3) / 2) * ((s - 1) / 2);
  };
  BigInt total = 0;
  int64_t hi = std::min(N, n - N - 4);
  for (int64_t d = -N; d <= hi; ++d) total += BigInt(N - std::llabs(d) + 1) * count(n - N - d);
  return BigRat(total);
}

BigRat unitary_f_quartic(int64_t n, int64_t N) {
  BigRat a = BigRat(-n * n * n * n + 4 * (2 * N + 3) * n * n * n -
                        2 * (6 * N * N + 24 * N + 19) * n * n +
                        (8 * N * N * N + 48 * N * N + 80 * N + 36) * n,
                    48);
  BigRat b = BigRat(4 * N * N * N * N + 32 * N * N * N + 80 * N * N + 64 * N + 9, 96);
  int64_t sn = (n % 2 == 0) ? 1 : -1;
  int64_t snN = ((n + N) % 2 == 0) ? 1 : -1;
  BigRat c = BigRat(sn + 2 * snN, 32);
  return a - b + c;
}

BigRat unitary_one_swap_bracket(int64_t n, int64_t N) {
  int64_t m = n - N;
  int64_t snN = ((n + N) % 2 == 0) ? 1 : -1;
  return BigRat(-4 * m * m * m + 6 * m * m - 20 * m + 21 + 3 * snN, 12);
}

RatSeries swap_series(MatrixGroup group, int64_t k, int64_t N, int64_t max_order) {
  if (k != 2) throw WindowError("swap_series: only the two-fold convolution is implemented");
  if (N < 1 || max_order < 0) throw WindowError("swap_series: need N >= 1 and max_order >= 0");
  if (group == MatrixGroup::symplectic) {
    RatSeries s = sp_zero_swap_series(2, max_order);
    for (int64_t j = 1; 2 * N + 2 * j <= max_order; ++j)
      s.at(static_cast<int>(2 * N + 2 * j)) -= BigRat(2 * N + 2 * j - 1);
    return s;  // the two-swap terms vanish identically on the diagonal
  }
  // unitary assembly is derived for orders up to 2N+1 only
  const int64_t cap = std::min(max_order, 2 * N + 1);
  RatSeries s(static_cast<int>(cap));
  for (int64_t n = 2; n <= cap; ++n) {
    BigRat c = unitary_zero_swap_printed(n);
    if (n >= N + 2) c += unitary_one_swap_bracket(n, N);
    s.at(static_cast<int>(n)) = c;
  }
  return s;
}

// ---------------------------------------------------------------------------
// piecewise closed forms and limiting profiles
// ---------------------------------------------------------------------------

IntegralValue corollary_closed_forms(const std::string& name, int64_t n, int64_t N) {
  if (N < 1) throw WindowError("corollary_closed_forms: need N >= 1");
  auto exact = [](const BigRat& v) { return IntegralValue::exact_value(v); };

  if (name == "sp_d2") {
    if (n < 0) throw WindowError("sp_d2: need n >= 0");
    if (n % 2 == 1) return exact(BigRat(0));
    int64_t l = n / 2;  // window seams run in l = n/2: branch change at l = N
    if (l <= N) return exact(BigRat(binomial(l + 2, 2)));
    if (l <= 2 * N) return exact(BigRat(binomial(2 * N - l + 2, 2)));
    return exact(BigRat(0));  // beyond the generating polynomial degree 4N
  }
  if (name == "sp_d1_sq") {
    if (n < 0) throw WindowError("sp_d1_sq: need n >= 0");
    if (n <= N) return exact(BigRat((n + 2) / 2));
    if (n <= 2 * N) return exact(BigRat((2 * N - n + 2) / 2));
    return exact(BigRat(0));  // secular coefficients vanish beyond the dimension
  }
  if (name == "sp_l1_sq") {
    if (n < 1) throw WindowError("sp_l1_sq: need n >= 1");
    int64_t eta = (n % 2 == 0) ? 1 : 0;
    if (n <= N) return exact(BigRat(n + eta));
    if (n <= 2 * N) return exact(BigRat(n - 1 + eta));
    return exact(BigRat(2 * N));
  }
  if (name == "sp_l2") {
    if (n < 2) throw WindowError("sp_l2: need n >= 2");
    if (n > 2 * N + 1) return exact(BigRat(0));
    return exact((n % 2 == 0) ? BigRat(n - 1) : BigRat(0));
  }
  if (name == "u_l2_sq") {
    if (n < 2 || n > 2 * N + 3) throw WindowError("u_l2_sq: window is 2 <= n <= 2N+3");
    BigRat v = unitary_zero_swap_printed(n);
    if (n >= N + 2) v += unitary_one_swap_bracket(n, N);
    return exact(v);
  }
  throw WindowError("corollary_closed_forms: unknown name " + name);
}

IntegralValue u_l2_sq_corrected(int64_t n, int64_t N) {
  if (n < 2) throw WindowError("u_l2_sq_corrected: need n >= 2");
  return IntegralValue::exact_value(BigRat(n * (n * n - 1), 3), n <= N);
}

GammaProfile corollary_gamma_profile(const std::string& name, int64_t n, int64_t N) {
  GammaProfile p;
  // scaled parameter: c = n/(2N) where the window seam sits at n = 2N,
  // c = n/N where it sits at n = N
  if (name == "sp_d2") {
    p.c = static_cast<double>(n) / (2.0 * N);
    p.scale_power = 2;
  } else if (name == "sp_d1_sq" || name == "sp_l1_sq") {
    p.c = static_cast<double>(n) / static_cast<double>(N);
    p.scale_power = 1;
  } else if (name == "sp_l2") {
    p.c = static_cast<double>(n) / (2.0 * N);
    p.scale_power = 1;
  } else if (name == "u_l2_sq") {
    p.c = static_cast<double>(n) / static_cast<double>(N);
    p.scale_power = 3;
  } else {
    throw WindowError("corollary_gamma_profile: unknown name " + name);
  }
  p.gamma = gamma_closed_forms(name, p.c);
  p.prediction = p.gamma * std::pow(static_cast<double>(N), p.scale_power);
  return p;
}

double gamma_closed_forms(const std::string& name, double c) {
  if (c < 0) throw WindowError("gamma_closed_forms: need c >= 0");
  auto need = [&](double hi) {
    if (c > hi + 1e-12) throw WindowError("gamma_closed_forms: c beyond the domain of " + name);
  };
  if (name == "gamma1") {
    need(1.0);
    return 1.0;
  }
  if (name == "gamma2") {
    need(2.0);
    return (c <= 1.0) ? c * c * c / 6.0 : (2 - c) * (2 - c) * (2 - c) / 6.0;
  }
  if (name == "sp_d2") {
    need(2.0);
    return (c <= 1.0) ? c * c / 2.0 : (2 - c) * (2 - c) / 2.0;
  }
  if (name == "sp_d1_sq") {
    need(2.0);
    return (c <= 1.0) ? c / 2.0 : (2 - c) / 2.0;
  }
  if (name == "sp_l1_sq") {
    return (c <= 2.0) ? c : 2.0;
  }
  if (name == "sp_l2") {
    return (c <= 1.0) ? c : 0.0;
  }
  if (name == "u_l2_sq") {
    need(2.0);
    double v = c * c * c / 6.0;
    if (c > 1.0) v += (1 - c) * (1 - c) * (1 - c) / 3.0;
    return v;
  }
  throw WindowError("gamma_closed_forms: unknown name " + name);
}

GammaEstimate gamma_k(int64_t k, double c, uint64_t samples, uint64_t seed) {
  if (k < 1 || k > 3) throw WindowError("gamma_k: supported orders are k = 1, 2, 3");
  if (c < 0 || c > static_cast<double>(k)) throw WindowError("gamma_k: need 0 <= c <= k");
  GammaEstimate g;
  if (k == 1) {
    g.value = 1.0;
    return g;
  }
  if (k == 2) {
    // delta reduction: w2 = c - w1 on [max(0,c-1), min(1,c)];
    // (w1-w2)^2 = (2w - c)^2 is quadratic, so a small rule is exact
    double lo = std::max(0.0, c - 1.0), hi = std::min(1.0, c);
    if (hi <= lo) {
      g.value = 0.0;
      return g;
    }
    double acc = 0;
    for (const QuadNode& q : gauss_legendre(16, lo, hi)) {
      double d = 2 * q.x - c;
      acc += q.w * 0.5 * d * d;
    }
    g.value = acc;
    return g;
  }
  // k == 3: Monte Carlo over the two free coordinates of the simplex slice
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double sum = 0, sum_sq = 0;
  for (uint64_t i = 0; i < samples; ++i) {
    double w1 = u01(rng), w2 = u01(rng);
    double w3 = c - w1 - w2;
    double f = 0;
    if (w3 >= 0.0 && w3 <= 1.0) {
      double d12 = w1 - w2, d13 = w1 - w3, d23 = w2 - w3;
      f = d12 * d12 * d13 * d13 * d23 * d23 / 24.0;
    }
    sum += f;
    sum_sq += f * f;
  }
  double mean = sum / static_cast<double>(samples);
  double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  g.value = mean;
  g.std_error = std::sqrt(var / static_cast<double>(samples));
  g.samples = samples;
  g.seed = seed;
  return g;
}

}  // namespace ffvar
