#include "equilog/padics.hpp"

#include "equilog/error.hpp"

#include <algorithm>

namespace equilog {

mpz_class PadicContext::modulus() const {
  mpz_class m;
  mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), N);
  return m;
}

namespace {

mpz_class power(const mpz_class& p, unsigned long e) {
  mpz_class m;
  mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), e);
  return m;
}

}  // namespace

long valuation(const mpz_class& a, const mpz_class& p) {
  require(a != 0, ErrorKind::precondition, "valuation of zero");
  mpz_class rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const mpq_class& a, const mpz_class& p) {
  return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

std::vector<NewtonSegment> newton_polygon(const IntPoly& P_in, const mpz_class& p) {
  require(!P_in.is_zero(), ErrorKind::precondition, "Newton polygon of zero");
  IntPoly P = strip_x_power(P_in).second;
  struct Pt {
    long x, y;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i <= P.deg(); ++i) {
    if (P[i] != 0) pts.push_back({static_cast<long>(i), valuation(P[i], p)});
  }
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b unless it lies strictly below the segment a-q.
      long cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  std::vector<NewtonSegment> out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    mpq_class slope(hull[i].y - hull[i - 1].y, hull[i].x - hull[i - 1].x);
    slope.canonicalize();
    out.push_back({slope, static_cast<std::size_t>(hull[i].x - hull[i - 1].x)});
  }
  return out;
}

std::vector<LocalFactor> local_factors(const IntPoly& P, const mpz_class& p, unsigned N) {
  require(!P.is_zero() && P.deg() >= 1, ErrorKind::precondition, "local factors of a constant");
  require(N >= 1, ErrorKind::precondition, "p-adic precision must be at least 1");
  if (mpz_divisible_p(P.leading().get_mpz_t(), p.get_mpz_t()) || !is_squarefree_mod(ModPoly(P, p))) {
    throw Error(ErrorKind::ramified_or_unseparable,
                "polynomial is not squarefree modulo " + p.get_str() + " (or p divides its leading coefficient)");
  }
  std::vector<ModPoly> mod_p = factor_squarefree_mod(ModPoly(P, p).monic());
  PadicContext ctx{p, N};
  mpz_class pN = ctx.modulus();
  std::vector<ModPoly> lifted = hensel_lift(P, mod_p, p, pN);
  std::vector<LocalFactor> out;
  for (std::size_t i = 0; i < mod_p.size(); ++i) {
    LocalFactor lf;
    lf.context = ctx;
    lf.g = lifted[i];
    lf.reduction = mod_p[i];
    lf.residue_degree = static_cast<unsigned>(mod_p[i].degree());
    if (lf.residue_degree >= 2) {
      lf.root_valuation = 0;  // irreducible mod p of degree >= 2: a unit
    } else {
      mpz_class root = pN - lf.g[0];
      mpz_mod(root.get_mpz_t(), root.get_mpz_t(), pN.get_mpz_t());
      if (root == 0) {
        throw Error(ErrorKind::precision_exhausted,
                    "root is divisible by p^" + std::to_string(N) + "; raise the p-adic precision");
      }
      lf.root_valuation = valuation(root, p);
    }
    out.push_back(std::move(lf));
  }
  return out;
}

namespace {

bool eisenstein_dumas(const IntPoly& f, const mpz_class& p) {
  auto np = newton_polygon(f, p);
  if (np.size() != 1 || np[0].length != f.deg() || f.constant_term() == 0) return false;
  return np[0].slope.get_den() == f.deg();
}

}  // namespace

bool single_place_above(const IntPoly& minpoly, const mpz_class& p) {
  if (minpoly.deg() == 1) return true;
  if (!mpz_divisible_p(minpoly.leading().get_mpz_t(), p.get_mpz_t()) &&
      is_irreducible_mod(ModPoly(minpoly, p))) {
    return true;
  }
  if (eisenstein_dumas(minpoly, p)) return true;
  unsigned long limit = p.fits_ulong_p() ? std::min<unsigned long>(p.get_ui(), 64) : 64;
  for (unsigned long c = 1; c < limit; ++c) {
    if (eisenstein_dumas(minpoly.shifted(mpz_class(c)), p)) return true;
    if (eisenstein_dumas(minpoly.shifted(-mpz_class(c)), p)) return true;
  }
  return false;
}

PadicPoint::PadicPoint(IntPoly minpoly, mpz_class p, std::size_t index, unsigned N)
    : minpoly_(std::move(minpoly)), p_(std::move(p)), index_(index), N_(N) {
  require(!minpoly_.is_zero() && minpoly_.deg() >= 1, ErrorKind::precondition,
          "p-adic point needs a nonconstant minimal polynomial");
  require(mpz_probab_prime_p(p_.get_mpz_t(), 30) != 0, ErrorKind::precondition,
          p_.get_str() + " is not prime");
  if (minpoly_.deg() == 1) {
    route_ = PadicRoute::rational;
    count_ = 1;
  } else if (!mpz_divisible_p(minpoly_.leading().get_mpz_t(), p_.get_mpz_t()) &&
             is_squarefree_mod(ModPoly(minpoly_, p_))) {
    route_ = PadicRoute::local_factor;
    auto fs = local_factors(minpoly_, p_, N_);
    count_ = fs.size();
    require(index_ < count_, ErrorKind::precondition,
            "local factor index " + std::to_string(index_) + " out of range");
    factor_ = fs[index_];
  } else if (single_place_above(minpoly_, p_)) {
    route_ = PadicRoute::norm;
    count_ = 1;
  } else {
    throw Error(ErrorKind::padic_context_unavailable,
                "no certified embedding at p = " + p_.get_str() + " for " + minpoly_.to_string());
  }
  require(index_ < count_, ErrorKind::precondition, "embedding index out of range");
}

std::size_t PadicPoint::local_degree() const {
  switch (route_) {
    case PadicRoute::rational: return 1;
    case PadicRoute::local_factor: return factor_->residue_degree;
    case PadicRoute::norm: return minpoly_.deg();
  }
  return 0;
}

mpq_class PadicPoint::root_valuation() const {
  switch (route_) {
    case PadicRoute::rational: {
      require(minpoly_[0] != 0, ErrorKind::precondition, "valuation of the root 0");
      return valuation(mpq_class(minpoly_[0], minpoly_[1]), p_);
    }
    case PadicRoute::local_factor: return factor_->root_valuation;
    case PadicRoute::norm: {
      require(minpoly_[0] != 0, ErrorKind::precondition, "valuation of the root 0");
      mpq_class v(valuation(minpoly_[0], p_) - valuation(minpoly_.leading(), p_),
                  static_cast<unsigned long>(minpoly_.deg()));
      v.canonicalize();
      return v;
    }
  }
  return 0;
}

LocalFactor PadicPoint::factor_at(unsigned N) const {
  if (N == N_) return *factor_;
  return local_factors(minpoly_, p_, N)[index_];
}

std::vector<mpz_class> PadicPoint::eval_residue(const IntPoly& P, unsigned N) const {
  require(route_ == PadicRoute::local_factor, ErrorKind::internal, "eval_residue needs a local factor");
  LocalFactor lf = factor_at(N);
  const mpz_class pN = lf.context.modulus();
  ModPoly x = ModPoly::x(pN) % lf.g;
  ModPoly acc(pN);
  for (std::size_t k = P.coeffs().size(); k-- > 0;) {
    acc = (acc * x + ModPoly::constant(P.coeffs()[k], pN)) % lf.g;
  }
  std::vector<mpz_class> out(lf.residue_degree);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i];
  return out;
}

mpq_class PadicPoint::eval_valuation(const IntPoly& P) const {
  require(!P.is_zero(), ErrorKind::vanishing_input, "the zero polynomial vanishes everywhere");
  if (route_ == PadicRoute::rational) {
    mpq_class root(-minpoly_[0], minpoly_[1]);
    root.canonicalize();
    mpq_class v = P.eval(root);
    require(v != 0, ErrorKind::vanishing_input, "P vanishes at the point");
    return valuation(v, p_);
  }
  require(gcd(P, minpoly_).deg() == 0, ErrorKind::vanishing_input, "P vanishes at the point");
  if (route_ == PadicRoute::norm) {
    QuotientRing ring(minpoly_);
    mpq_class nrm = ring.norm(RatPoly(P));
    mpq_class v(valuation(nrm, p_), static_cast<unsigned long>(minpoly_.deg()));
    v.canonicalize();
    return v;
  }
  for (unsigned N = N_; N <= kPadicPrecisionCap; N *= 2) {
    auto coords = eval_residue(P, N);
    long best = -1;
    for (const auto& c : coords) {
      if (c == 0) continue;
      long v = valuation(c, p_);
      if (best < 0 || v < best) best = v;
    }
    if (best >= 0) return best;
  }
  throw Error(ErrorKind::precision_exhausted, "value vanishes to the p-adic precision cap");
}

std::vector<mpz_class> PadicPoint::zp_coordinates(const mpz_class& n, unsigned N) const {
  require(n >= 0, ErrorKind::precondition, "zp_coordinates needs n >= 0");
  if (root_valuation() < 0) {
    throw Error(ErrorKind::nonintegral_element, "|x|_p > 1: coordinates are not p-adic integers");
  }
  const mpz_class pN = power(p_, N);
  switch (route_) {
    case PadicRoute::rational: {
      mpq_class root(-minpoly_[0], minpoly_[1]);
      root.canonicalize();
      mpz_class inv;
      mpz_class den = root.get_den();
      require(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pN.get_mpz_t()) != 0,
              ErrorKind::nonintegral_element, "denominator divisible by p");
      mpz_class r = root.get_num() * inv;
      mpz_class out;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pN.get_mpz_t());
      mpz_powm(out.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), pN.get_mpz_t());
      return {out};
    }
    case PadicRoute::local_factor: {
      LocalFactor lf = factor_at(N);
      ModPoly r = powmod(ModPoly::x(pN), n, lf.g);
      std::vector<mpz_class> out(lf.residue_degree);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i];
      return out;
    }
    case PadicRoute::norm: {
      if (mpz_divisible_p(minpoly_.leading().get_mpz_t(), p_.get_mpz_t())) {
        throw Error(ErrorKind::padic_context_unavailable,
                    "power basis coordinates need a leading coefficient prime to p");
      }
      ModPoly g = ModPoly(minpoly_, pN).monic();
      ModPoly r = powmod(ModPoly::x(pN), n, g);
      std::vector<mpz_class> out(minpoly_.deg());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i];
      return out;
    }
  }
  return {};
}

}  // namespace equilog
