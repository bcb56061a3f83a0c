#include "ffvar/sectors.hpp"

#include <algorithm>

#include "ffvar/errors.hpp"
#include "ffvar/field.hpp"

namespace ffvar {

namespace {

// truncate to a residue mod S^k (coefficients 0..k-1)
Poly trunc_mod_sk(const Poly& f, int k) {
  std::vector<int64_t> c(static_cast<size_t>(k), 0);
  for (int i = 0; i < k && i <= f.deg(); ++i) c[static_cast<size_t>(i)] = f.coeff(i);
  return Poly(f.q(), c);
}

Poly mul_mod_sk(const Poly& a, const Poly& b, int k) { return trunc_mod_sk(a * b, k); }

}  // namespace

Poly unit_inverse_mod_sk(const Poly& f, int k) {
  const int64_t q = f.q();
  if (f.is_zero() || f.coeff(0) == 0)
    throw std::invalid_argument("unit_inverse_mod_sk: constant term vanishes");
  std::vector<int64_t> b(static_cast<size_t>(k), 0);
  const int64_t b0 = invm(f.coeff(0), q);
  b[0] = b0;
  for (int m = 1; m < k; ++m) {
    int64_t acc = 0;
    for (int i = 1; i <= m; ++i) acc = addm(acc, mulm(f.coeff(i), b[static_cast<size_t>(m - i)], q), q);
    b[static_cast<size_t>(m)] = mulm(negm(acc, q), b0, q);
  }
  return Poly(q, b);
}

Poly sqrt_one_branch_mod_sk(const Poly& r, int k) {
  const int64_t q = r.q();
  if (r.is_zero() || r.coeff(0) != 1)
    throw std::invalid_argument("sqrt_one_branch_mod_sk: constant term must be 1");
  const int64_t half = invm(2 % q, q);
  std::vector<int64_t> u(static_cast<size_t>(k), 0);
  u[0] = 1;
  for (int m = 1; m < k; ++m) {
    // [S^m] u^2 = 2 u_m + sum_{i=1}^{m-1} u_i u_{m-i} must equal r_m
    int64_t cross = 0;
    for (int i = 1; i <= m - 1; ++i)
      cross = addm(cross, mulm(u[static_cast<size_t>(i)], u[static_cast<size_t>(m - i)], q), q);
    u[static_cast<size_t>(m)] = mulm(subm(r.coeff(m), cross, q), half, q);
  }
  return Poly(q, u);
}

Poly u_k_map(const Poly& f, int k) {
  if (k < 1) throw std::invalid_argument("u_k_map: k must be >= 1");
  const Poly r0 = trunc_mod_sk(f, k);
  if (r0.is_zero() || r0.coeff(0) == 0)
    throw std::invalid_argument("u_k_map: f is not a unit mod S^k");
  const Poly ratio = mul_mod_sk(r0, unit_inverse_mod_sk(r0.sigma(), k), k);
  // f / sigma(f) has constant term 1 and norm 1, hence a unique square root
  // that is itself a 1-unit
  return sqrt_one_branch_mod_sk(ratio, k);
}

SectorGroup::SectorGroup(int64_t q, int k, int64_t guardrail) : q_(q), k_(k) {
  FieldSpec fs(q);  // validates q odd prime
  if (k < 2) throw std::invalid_argument("SectorGroup: k must be >= 2");
  // candidates are 1-units mod S^k: q^{k-1} of them
  int64_t candidates = 1;
  for (int i = 1; i < k; ++i) {
    if (candidates > guardrail / q)
      throw GuardrailError("SectorGroup: 1-unit enumeration exceeds guardrail");
    candidates *= q;
  }
  for (int64_t m = 0; m < candidates; ++m) {
    std::vector<int64_t> c(static_cast<size_t>(k), 0);
    c[0] = 1;
    int64_t t = m;
    for (int i = 1; i < k; ++i) {
      c[static_cast<size_t>(i)] = t % q;
      t /= q;
    }
    const Poly v(q, c);
    if (mul_mod_sk(v, v.sigma(), k) == Poly::one(q)) elements_.push_back(v);
  }
  int64_t expected = 1;
  for (int i = 0; i < kappa(); ++i) expected *= q;
  if (static_cast<int64_t>(elements_.size()) != expected)
    throw IdentityError("SectorGroup: norm-one group size differs from q^floor(k/2)");
  structure_ = abelian_structure(
      elements_, [k](const Poly& a, const Poly& b) { return mul_mod_sk(a, b, k); },
      Poly::one(q));
}

int64_t SectorGroup::sector_index(const Poly& v) const {
  const Poly r = trunc_mod_sk(v, k_);
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == r) return static_cast<int64_t>(i);
  throw std::invalid_argument("SectorGroup: element is not norm-one");
}

SectorGroup::Char SectorGroup::character(int64_t index) const {
  Char xi;
  xi.index = index;
  xi.t = character_tuple(structure_, index);
  return xi;
}

bool SectorGroup::eval(const Char& xi, const Poly& f, int64_t* exponent) const {
  const Poly r = trunc_mod_sk(f, k_);
  if (r.is_zero() || r.coeff(0) == 0) return false;
  *exponent = eval_norm_one(xi, u_k_map(r, k_));
  return true;
}

int64_t SectorGroup::eval_norm_one(const Char& xi, const Poly& v) const {
  return character_exponent(structure_, xi.t, trunc_mod_sk(v, k_));
}

int SectorGroup::swan_conductor(const Char& xi) const {
  // test nontriviality on the image of 1 + (S^d), top of the filtration first
  for (int d = k_ - 1; d >= 1; --d) {
    int64_t count = 1;
    for (int i = d; i < k_; ++i) count *= q_;  // q^{k-d} elements 1 + S^d g
    for (int64_t m = 0; m < count; ++m) {
      std::vector<int64_t> c(static_cast<size_t>(k_), 0);
      c[0] = 1;
      int64_t t = m;
      for (int i = d; i < k_; ++i) {
        c[static_cast<size_t>(i)] = t % q_;
        t /= q_;
      }
      const Poly u(q_, c);
      if (eval_norm_one(xi, u_k_map(u, k_)) != 0) return d;
    }
  }
  return 0;
}

int64_t SectorGroup::primitive_count() const {
  int64_t n = 0;
  for (int64_t i = 0; i < sector_count(); ++i)
    if (is_primitive(character(i))) ++n;
  return n;
}

}  // namespace ffvar
