// Prime-field scalar arithmetic mod q.
//
// The whole library works over F_q with q a small odd prime.  Residues are
// kept reduced in [0, q) and stored as int64_t; all products fit comfortably
// because q is capped well below 2^31.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffvar {

// Largest field size accepted anywhere.  Statistics are exact and
// enumeration-based, so tiny primes are the whole use case.
inline constexpr int64_t kMaxFieldSize = 1'000'000;

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ----------------------------------------------------------------------
// FieldSpec: validated field descriptor
// ----------------------------------------------------------------------

struct FieldSpec {
  int64_t q = 0;

  FieldSpec() = default;
  explicit FieldSpec(int64_t q_) : q(q_) {
    if (q < 3 || q > kMaxFieldSize || !is_prime_u64(static_cast<uint64_t>(q)) || q % 2 == 0)
      throw std::invalid_argument("FieldSpec: q must be an odd prime >= 3, got " +
                                  std::to_string(q_));
  }

  // Quadratic-reciprocity-based operations assume q = 1 mod 4 so that the
  // residue symbol is symmetric on monic coprime pairs.
  bool reciprocity_ok() const { return q % 4 == 1; }

  bool operator==(const FieldSpec& o) const { return q == o.q; }
};

// ----------------------------------------------------------------------
// scalar ops mod q
// ----------------------------------------------------------------------

inline int64_t addm(int64_t a, int64_t b, int64_t q) {
  int64_t s = a + b;
  return s >= q ? s - q : s;
}

inline int64_t subm(int64_t a, int64_t b, int64_t q) {
  int64_t s = a - b;
  return s < 0 ? s + q : s;
}

inline int64_t mulm(int64_t a, int64_t b, int64_t q) { return (a * b) % q; }

inline int64_t negm(int64_t a, int64_t q) { return a == 0 ? 0 : q - a; }

inline int64_t powm(int64_t a, uint64_t e, int64_t q) {
  int64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulm(r, a, q);
    a = mulm(a, a, q);
    e >>= 1;
  }
  return r;
}

// Inverse via Fermat; a must be nonzero mod q.
inline int64_t invm(int64_t a, int64_t q) {
  a %= q;
  if (a < 0) a += q;
  if (a == 0) throw std::domain_error("invm: zero has no inverse");
  return powm(a, static_cast<uint64_t>(q - 2), q);
}

}  // namespace ffvar
