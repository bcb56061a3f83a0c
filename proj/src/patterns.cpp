#include "ffvar/patterns.hpp"

#include <algorithm>
#include <set>

namespace ffvar {

CyclePattern pattern_of(const Factorization& fac) {
  CyclePattern sigma;
  for (auto& [p, e] : fac.factors)
    for (int i = 0; i < e; ++i) sigma.push_back(p.deg());
  std::sort(sigma.rbegin(), sigma.rend());
  return sigma;
}

BigInt pattern_count_s(const CyclePattern& sigma) {
  int m = 0;
  std::map<int, int> mult;
  for (int d : sigma) {
    m += d;
    ++mult[d];
  }
  BigInt denom = 1;
  for (auto& [d, md] : mult) denom *= int_pow(d, md) * factorial(md);
  return factorial(m) / denom;
}

std::vector<CyclePattern> partitions_of(int m) {
  std::vector<CyclePattern> out;
  CyclePattern cur;
  // descending parts, largest-first recursion
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

BigInt pattern_count_exact(int64_t q, const CyclePattern& sigma) {
  std::map<int, int> mult;
  for (int d : sigma) ++mult[d];
  BigInt total = 1;
  for (auto& [d, md] : mult) total *= binomial(count_irreducibles(q, d), md);
  return total;
}

bool refines(const CyclePattern& sigma, const CyclePattern& rho) {
  int64_t sum_s = 0, sum_r = 0;
  for (int d : sigma) sum_s += d;
  for (int d : rho) sum_r += d;
  if (sum_s != sum_r) return false;
  // assign each part of sigma to a block of rho; backtracking on remaining
  // block capacities (sigma descending keeps the search small)
  std::vector<int> cap(rho.begin(), rho.end());
  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == sigma.size()) return true;
    std::set<int> tried;
    for (auto& c : cap) {
      if (c < sigma[i] || tried.count(c)) continue;
      tried.insert(c);
      c -= sigma[i];
      if (self(self, i + 1)) {
        c += sigma[i];
        return true;
      }
      c += sigma[i];
    }
    return false;
  };
  return rec(rec, 0);
}

PatternFamilyReport pattern_family_check(int64_t q, int m, int64_t guardrail) {
  PatternFamilyReport report;
  report.m = m;
  report.q = q;

  std::map<CyclePattern, int64_t> buckets;
  for_each_monic(q, m, guardrail, [&](const Poly& f) {
    Factorization fac = factor(f);
    bool squarefree = true;
    for (auto& [p, e] : fac.factors)
      if (e > 1) squarefree = false;
    if (!squarefree) return;
    ++report.squarefree_total;
    ++buckets[pattern_of(fac)];
  });

  const BigInt qm = int_pow(q, m);
  const BigInt mfact = factorial(m);
  bool ok = true;
  for (const CyclePattern& sigma : partitions_of(m)) {
    PatternFamilyReport::Row row;
    row.sigma = sigma;
    row.enumerated = buckets.count(sigma) ? buckets[sigma] : 0;
    row.closed_form = pattern_count_exact(q, sigma);
    row.permutation_density = BigRat(pattern_count_s(sigma), mfact);
    row.enumerated_density = BigRat(row.enumerated, qm);
    if (row.closed_form != row.enumerated) ok = false;
    report.rows.push_back(std::move(row));
  }

  // coarse families: distinct products of monic tuples with degree vector rho
  for (const CyclePattern& rho : partitions_of(m)) {
    PatternFamilyReport::CoarseRow row;
    row.rho = rho;
    std::set<Poly> members;
    auto rec = [&](auto&& self, size_t i, const Poly& acc) -> void {
      if (i == rho.size()) {
        // keep squarefree products only
        if (Poly::gcd(acc, acc.derivative()).deg() == 0) members.insert(acc);
        return;
      }
      for_each_monic(q, rho[i], guardrail,
                     [&](const Poly& g) { self(self, i + 1, acc * g); });
    };
    rec(rec, 0, Poly::one(q));
    row.product_count = static_cast<int64_t>(members.size());
    for (auto& r : report.rows)
      if (refines(r.sigma, rho)) row.refinement_sum += r.enumerated;
    if (row.product_count != row.refinement_sum) ok = false;
    report.coarse_rows.push_back(std::move(row));
  }

  report.all_exact = ok;
  return report;
}

}  // namespace ffvar
