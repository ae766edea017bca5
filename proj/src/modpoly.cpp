#include "equilog/modpoly.hpp"

#include "equilog/error.hpp"

#include <algorithm>

namespace equilog {

namespace {

void reduce_coeff(mpz_class& v, const mpz_class& m) { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()); }

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorKind::internal, "non-invertible leading coefficient modulo " + m.get_str());
  }
  return r;
}

}  // namespace

ModPoly::ModPoly(mpz_class modulus) : m_(std::move(modulus)) {}

ModPoly::ModPoly(std::vector<mpz_class> coeffs, mpz_class modulus)
    : c_(std::move(coeffs)), m_(std::move(modulus)) {
  normalize();
}

ModPoly::ModPoly(const IntPoly& p, mpz_class modulus) : c_(p.coeffs()), m_(std::move(modulus)) {
  normalize();
}

ModPoly ModPoly::constant(const mpz_class& c, const mpz_class& modulus) {
  return ModPoly(std::vector<mpz_class>{c}, modulus);
}

ModPoly ModPoly::x(const mpz_class& modulus) { return ModPoly(std::vector<mpz_class>{0, 1}, modulus); }

void ModPoly::normalize() {
  for (auto& v : c_) reduce_coeff(v, m_);
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool ModPoly::operator<(const ModPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

ModPoly ModPoly::operator-() const {
  ModPoly r = *this;
  for (auto& v : r.c_) v = -v;
  r.normalize();
  return r;
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
  std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return ModPoly(std::move(r), a.m_);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
  std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return ModPoly(std::move(r), a.m_);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
  if (a.is_zero() || b.is_zero()) return ModPoly(a.m_);
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ModPoly(std::move(r), a.m_);
}

ModPoly operator*(const ModPoly& a, const mpz_class& s) {
  std::vector<mpz_class> r = a.c_;
  for (auto& v : r) v *= s;
  return ModPoly(std::move(r), a.m_);
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly(m_);
  std::vector<mpz_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ModPoly(std::move(r), m_);
}

ModPoly ModPoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return *this * inverse_mod(c_.back(), m_);
}

IntPoly ModPoly::to_symmetric() const {
  std::vector<mpz_class> r = c_;
  mpz_class half = m_ / 2;
  for (auto& v : r) {
    if (v > half) v -= m_;
  }
  return IntPoly(std::move(r));
}

IntPoly ModPoly::to_nonnegative() const { return IntPoly(c_); }

ModPoly ModPoly::with_modulus(const mpz_class& m) const { return ModPoly(c_, m); }

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  require(!b.is_zero(), ErrorKind::precondition, "division by the zero polynomial");
  const mpz_class& m = a.modulus();
  if (a.degree() < b.degree()) return {ModPoly(m), a};
  const std::size_t db = static_cast<std::size_t>(b.degree());
  mpz_class inv = inverse_mod(b.leading(), m);
  std::vector<mpz_class> rem = a.coeffs();
  std::vector<mpz_class> quo(static_cast<std::size_t>(a.degree()) - db + 1);
  for (std::size_t k = quo.size(); k-- > 0;) {
    mpz_class qk = rem[k + db] * inv;
    reduce_coeff(qk, m);
    if (qk == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), b.coeffs()[j].get_mpz_t());
      reduce_coeff(rem[k + j], m);
    }
    quo[k] = std::move(qk);
  }
  rem.resize(db);
  return {ModPoly(std::move(quo), m), ModPoly(std::move(rem), m)};
}

ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
  ModPoly u = a, v = b;
  while (!v.is_zero()) {
    ModPoly r = u % v;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

ModXgcd xgcd(const ModPoly& a, const ModPoly& b) {
  const mpz_class& m = a.modulus();
  ModPoly r0 = a, r1 = b;
  ModPoly s0 = ModPoly::constant(1, m), s1(m);
  ModPoly t0(m), t1 = ModPoly::constant(1, m);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    ModPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  mpz_class inv = inverse_mod(r0.leading(), m);
  return {r0 * inv, s0 * inv, t0 * inv};
}

ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& f) {
  const mpz_class& m = f.modulus();
  ModPoly result = ModPoly::constant(1, m) % f;
  ModPoly b = base % f;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % f;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % f;
  }
  return result;
}

bool is_squarefree_mod(const ModPoly& f) {
  if (f.degree() <= 0) return f.degree() == 0;
  ModPoly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<std::pair<unsigned, ModPoly>> distinct_degree_factor(const ModPoly& f_in,
                                                                 unsigned max_degree) {
  const mpz_class& p = f_in.modulus();
  std::vector<std::pair<unsigned, ModPoly>> out;
  ModPoly f = f_in.monic();
  ModPoly x = ModPoly::x(p);
  ModPoly h = x % f;
  unsigned i = 0;
  while (f.degree() > 0) {
    ++i;
    if (static_cast<long>(2 * i) > f.degree()) {
      // What is left is irreducible.
      unsigned d = static_cast<unsigned>(f.degree());
      if (max_degree == 0 || d <= max_degree) {
        out.emplace_back(d, f);
      } else {
        out.emplace_back(0, f);
      }
      return out;
    }
    if (max_degree != 0 && i > max_degree) {
      out.emplace_back(0, f);
      return out;
    }
    h = powmod(h, p, f);
    ModPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(i, g);
      f = divmod(f, g).first;
      h = h % f;
    }
  }
  return out;
}

std::vector<ModPoly> equal_degree_factor(const ModPoly& f, unsigned degree, unsigned long seed) {
  const mpz_class& p = f.modulus();
  if (static_cast<unsigned>(f.degree()) == degree) return {f.monic()};
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  const std::size_t n = static_cast<std::size_t>(f.degree());
  mpz_class pd;
  mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), degree);
  const bool even = (p == 2);
  mpz_class half = (pd - 1) / 2;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<mpz_class> a(n);
    for (auto& v : a) v = rng.get_z_range(p);
    ModPoly ap(std::move(a), p);
    if (ap.degree() <= 0) continue;
    ModPoly b(p);
    if (even) {
      // Trace map a + a^2 + ... + a^(2^(degree-1)).
      ModPoly t = ap % f;
      b = t;
      for (unsigned k = 1; k < degree; ++k) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      b = powmod(ap, half, f) - ModPoly::constant(1, p);
    }
    ModPoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto left = equal_degree_factor(g, degree, seed * 6364136223846793005UL + 1442695040888963407UL);
      auto right = equal_degree_factor(divmod(f, g).first, degree,
                                       seed * 2862933555777941757UL + 3037000493UL);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
  throw Error(ErrorKind::internal, "equal-degree splitting did not terminate");
}

std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f, unsigned long seed) {
  std::vector<ModPoly> out;
  for (auto& [d, g] : distinct_degree_factor(f)) {
    auto parts = equal_degree_factor(g, d, seed + d);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible_mod(const ModPoly& f) {
  if (f.degree() <= 0) return false;
  if (!is_squarefree_mod(f)) return false;
  auto ddf = distinct_degree_factor(f);
  return ddf.size() == 1 && static_cast<long>(ddf[0].first) == f.degree();
}

namespace {

struct LiftedPair {
  ModPoly g, h;
};

// Quadratic Hensel lifting of a monic factorization F = g h (mod p) to `target`.
LiftedPair lift_pair(const ModPoly& F_target, ModPoly g, ModPoly h, const mpz_class& p,
                     const mpz_class& target) {
  ModXgcd x = xgcd(g, h);
  require(x.g.degree() == 0, ErrorKind::internal, "Hensel factors are not coprime");
  ModPoly s = x.s, t = x.t;
  mpz_class m = p;
  while (m < target) {
    mpz_class M = m * m;
    if (M > target) M = target;
    ModPoly F = F_target.with_modulus(M);
    g = g.with_modulus(M);
    h = h.with_modulus(M);
    s = s.with_modulus(M);
    t = t.with_modulus(M);
    ModPoly e = F - g * h;
    auto [q, r] = divmod(s * e, h);
    ModPoly g2 = g + t * e + q * g;
    ModPoly h2 = h + r;
    ModPoly b = s * g2 + t * h2 - ModPoly::constant(1, M);
    auto [c, d] = divmod(s * b, h2);
    ModPoly s2 = s - d;
    ModPoly t2 = t - t * b - c * g2;
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
    m = M;
  }
  return {g, h};
}

void lift_rec(const ModPoly& F, const std::vector<ModPoly>& factors, std::size_t lo, std::size_t hi,
              const mpz_class& p, const mpz_class& target, std::vector<ModPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = F;
    return;
  }
  std::size_t mid = (lo + hi) / 2;
  ModPoly g = ModPoly::constant(1, p), h = ModPoly::constant(1, p);
  for (std::size_t i = lo; i < mid; ++i) g = g * factors[i];
  for (std::size_t i = mid; i < hi; ++i) h = h * factors[i];
  LiftedPair lp = lift_pair(F, g, h, p, target);
  lift_rec(lp.g, factors, lo, mid, p, target, out);
  lift_rec(lp.h, factors, mid, hi, p, target, out);
}

}  // namespace

std::vector<ModPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors,
                                 const mpz_class& p, const mpz_class& target) {
  require(!factors.empty(), ErrorKind::precondition, "Hensel lifting needs factors");
  ModPoly F = ModPoly(f, target).monic();
  std::vector<ModPoly> out(factors.size(), ModPoly(target));
  lift_rec(F, factors, 0, factors.size(), p, target, out);
  return out;
}

}  // namespace equilog
