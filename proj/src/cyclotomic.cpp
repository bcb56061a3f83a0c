#include "ffvar/cyclotomic.hpp"

#include <cmath>
#include <map>

namespace ffvar {

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<BigInt> exact_poly_div(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<BigInt> quo(dn - dd + 1, BigInt(0));
  for (int i = dn; i >= dd; --i) {
    if (num[i] == 0) continue;
    BigInt f = num[i] / den[dd];  // cyclotomics are monic; division exact
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= f * den[j];
  }
  for (auto& x : num)
    if (x != 0) throw IdentityError("cyclotomic division left a remainder");
  return quo;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<BigInt>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n(x) = (x^n - 1) / prod_{d | n, d < n} Phi_d(x)
  std::vector<BigInt> num(n + 1, BigInt(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    num = exact_poly_div(std::move(num), cyclotomic_polynomial(d));
  }
  cache[n] = num;
  return num;
}

std::vector<BigInt> ExpTally::canonical() const {
  if (e_ == 1) return t_;
  const std::vector<BigInt> phi = cyclotomic_polynomial(e_);
  const int dd = static_cast<int>(phi.size()) - 1;
  std::vector<BigInt> rem(t_);
  for (int i = e_ - 1; i >= dd; --i) {
    if (rem[i] == 0) continue;
    BigInt f = rem[i];  // phi monic
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * phi[j];
  }
  rem.resize(static_cast<size_t>(dd));
  return rem;
}

BigInt ExpTally::to_integer() const {
  const std::vector<BigInt> rem = canonical();
  for (size_t i = 1; i < rem.size(); ++i)
    if (rem[i] != 0)
      throw IdentityError("character tally sum is not a rational integer");
  return rem[0];
}

std::complex<double> ExpTally::to_complex() const {
  const double two_pi = 6.283185307179586476925286766559;
  std::complex<double> z(0.0, 0.0);
  for (int k = 0; k < e_; ++k) {
    if (t_[k] == 0) continue;
    double a = two_pi * k / e_;
    z += to_double(t_[k]) * std::complex<double>(std::cos(a), std::sin(a));
  }
  return z;
}

}  // namespace ffvar
