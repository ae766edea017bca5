#include "equilog/factor.hpp"

#include "equilog/error.hpp"
#include "equilog/modpoly.hpp"

#include <algorithm>
#include <functional>

namespace equilog {

mpz_class next_prime(const mpz_class& n) {
  mpz_class r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

bool skipped(const mpz_class& l, const std::vector<mpz_class>& skip) {
  return std::find(skip.begin(), skip.end(), l) != skip.end();
}

bool admissible(const IntPoly& f, const mpz_class& l) {
  if (mpz_divisible_p(f.leading().get_mpz_t(), l.get_mpz_t())) return false;
  return is_squarefree_mod(ModPoly(f, l));
}

// Modular factors relevant for factors of degree <= max_deg: the monic
// irreducible factors of degree <= max_deg, plus the cofactor of larger ones.
struct ModularSplit {
  std::vector<ModPoly> small;
  std::optional<ModPoly> big;
};

ModularSplit split_mod(const IntPoly& f, const mpz_class& l, std::size_t max_deg) {
  ModularSplit out;
  ModPoly fl = ModPoly(f, l).monic();
  unsigned cap = static_cast<unsigned>(std::max<std::size_t>(max_deg, 1));
  for (auto& [d, g] : distinct_degree_factor(fl, cap)) {
    if (d == 0) {
      out.big = g;
      continue;
    }
    auto parts = equal_degree_factor(g, d, 12345 + d);
    out.small.insert(out.small.end(), parts.begin(), parts.end());
  }
  std::sort(out.small.begin(), out.small.end());
  return out;
}

mpz_class isqrt_ceil(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r < v) ++r;
  return r;
}

}  // namespace

std::optional<mpz_class> squarefree_prime(const IntPoly& f, unsigned long from,
                                          const std::vector<mpz_class>& skip, unsigned long limit) {
  mpz_class l = next_prime(mpz_class(from - 1));
  for (; l <= limit; l = next_prime(l)) {
    if (skipped(l, skip)) continue;
    if (admissible(f, l)) return l;
  }
  return std::nullopt;
}

SmallFactors find_small_factors(const IntPoly& f_in, std::size_t max_deg, const FactorOptions& opts) {
  require(!f_in.is_zero() && f_in.deg() >= 1, ErrorKind::precondition,
          "find_small_factors needs a nonconstant polynomial");
  IntPoly f = primitive_part(f_in);
  SmallFactors result;

  // Strip the trivial factor X first so that the modular search never sees it.
  if (f.constant_term() == 0) {
    result.factors.push_back(IntPoly::x());
    f = *exact_divide(f, IntPoly::x());
  }

  if (f.deg() == 0 || max_deg == 0) {
    result.cofactor = f;
    result.prime = opts.prime.value_or(0);
    return result;
  }

  // Choose the auxiliary prime.
  mpz_class ell;
  ModularSplit split;
  if (opts.prime) {
    ell = *opts.prime;
    require(admissible(f, ell), ErrorKind::no_squarefree_prime,
            "requested auxiliary prime " + ell.get_str() + " does not keep the polynomial squarefree");
    split = split_mod(f, ell, max_deg);
  } else {
    int found = 0;
    mpz_class l = next_prime(mpz_class(opts.first_prime - 1));
    for (; l <= opts.prime_limit && found < opts.candidates; l = next_prime(l)) {
      if (skipped(l, opts.skip) || !admissible(f, l)) continue;
      ModularSplit s = split_mod(f, l, max_deg);
      if (found == 0 || s.small.size() < split.small.size()) {
        ell = l;
        split = std::move(s);
      }
      ++found;
      if (split.small.empty()) break;
    }
    require(found > 0, ErrorKind::no_squarefree_prime,
            "no auxiliary prime keeps the polynomial squarefree");
  }
  result.prime = ell;

  if (split.small.empty()) {
    result.cofactor = f;
    return result;
  }

  // Coefficient bound for lc(f) * g with g | f, deg g <= max_deg.
  std::size_t k = std::min(max_deg, f.deg());
  mpz_class bound = 2 * abs(f.leading()) * isqrt_ceil(l2_norm_sq(f));
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), k);
  mpz_class modulus = ell;
  while (modulus <= bound) modulus *= modulus;

  std::vector<ModPoly> to_lift = split.small;
  if (split.big) to_lift.push_back(*split.big);
  std::vector<ModPoly> lifted = hensel_lift(f, to_lift, ell, modulus);
  std::vector<ModPoly> u(lifted.begin(), lifted.begin() + static_cast<std::ptrdiff_t>(split.small.size()));

  unsigned long long tested = 0;
  std::size_t size = 1;
  while (size <= u.size()) {
    std::vector<std::size_t> idx(size);
    bool found = false;
    // Enumerate index subsets of the given size in lexicographic order.
    std::function<bool(std::size_t, std::size_t, long)> rec = [&](std::size_t pos, std::size_t start,
                                                                 long deg) -> bool {
      if (pos == size) {
        if (++tested > opts.budget) {
          throw Error(ErrorKind::budget_exhausted, "factor recombination exceeded its budget");
        }
        ModPoly cand = ModPoly::constant(f.leading(), modulus);
        for (std::size_t i : idx) cand = cand * u[i];
        IntPoly g = primitive_part(cand.to_symmetric());
        if (g.deg() == 0) return false;
        auto q = exact_divide(f, g);
        if (!q) return false;
        result.factors.push_back(g);
        f = *q;
        for (std::size_t i = size; i-- > 0;) u.erase(u.begin() + static_cast<std::ptrdiff_t>(idx[i]));
        return true;
      }
      for (std::size_t i = start; i < u.size(); ++i) {
        long nd = deg + u[i].degree();
        if (nd > static_cast<long>(max_deg)) continue;
        idx[pos] = i;
        if (rec(pos + 1, i + 1, nd)) return true;
      }
      return false;
    };
    found = rec(0, 0, 0);
    if (!found) ++size;
  }

  result.cofactor = f;
  std::sort(result.factors.begin(), result.factors.end());
  return result;
}

std::vector<IntPoly> factor(const IntPoly& p, const FactorOptions& opts) {
  require(!p.is_zero(), ErrorKind::precondition, "factor of the zero polynomial");
  IntPoly f = primitive_part(p);
  std::vector<IntPoly> out;
  if (f.deg() == 0) return out;

  std::vector<IntPoly> parts;
  if (f.constant_term() != 0 && squarefree_prime(f, opts.first_prime, opts.skip, 200)) {
    parts.push_back(f);
  } else {
    parts = squarefree_decomposition(f);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const IntPoly& g = parts[i];
    if (g.deg() == 0) continue;
    SmallFactors sf = find_small_factors(g, g.deg() / 2, opts);
    std::vector<IntPoly> irr = sf.factors;
    if (sf.cofactor.deg() > 0) irr.push_back(primitive_part(sf.cofactor));
    for (const auto& h : irr) {
      for (std::size_t k = 0; k <= i; ++k) out.push_back(h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const IntPoly& p) {
  if (p.is_zero() || p.deg() == 0) return false;
  IntPoly f = primitive_part(p);
  if (f.deg() == 1) return true;
  if (f.constant_term() == 0) return false;
  for (unsigned long q : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
    auto cert = eisenstein_degree(f, mpz_class(q));
    if (cert && cert->e == f.deg()) return true;
  }
  auto l = squarefree_prime(f, 2, {}, 200);
  if (l && is_irreducible_mod(ModPoly(f, *l))) return true;
  return factor(f).size() == 1;
}

}  // namespace equilog
