#include "equilog/lattice.hpp"

#include "equilog/error.hpp"

#include <mpfr.h>

#include <cmath>

namespace equilog {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(std::vector<mpz_class>& y, const mpz_class& q, const std::vector<mpz_class>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

// Nearest integer to a / b for b > 0, ties toward +infinity.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class num = 2 * a + b, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * b).get_mpz_t());
  return q;
}

long double to_ld(const mpq_class& q) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  long double out = mpfr_get_ld(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

long double to_ld(const mpz_class& z) { return to_ld(mpq_class(z)); }

}  // namespace

// Integral LLL (Cohen, Algorithm 2.6.7) with 1-based d and lambda internally.
LllResult lll_reduce(const IntMatrix& rows, const mpq_class& delta) {
  const std::size_t n = rows.size();
  require(n >= 1, ErrorKind::precondition, "LLL needs at least one vector");
  LllResult r;
  r.basis = rows;
  r.transform.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r.transform[i][i] = 1;
  // Rows are addressed 1-based through B(k) and Hk(k).
  auto& b = r.basis;
  auto& H = r.transform;
  std::vector<mpz_class> d(n + 1, 0);
  IntMatrix lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  const mpz_class dn = delta.get_num(), dd = delta.get_den();

  auto B = [&](std::size_t k) -> std::vector<mpz_class>& { return b[k - 1]; };
  auto Hk = [&](std::size_t k) -> std::vector<mpz_class>& { return H[k - 1]; };

  auto redi = [&](std::size_t k, std::size_t l) {
    mpz_class twice = 2 * abs(lam[k][l]);
    if (twice <= d[l]) return;
    mpz_class q = round_div(lam[k][l], d[l]);
    axpy(B(k), q, B(l));
    axpy(Hk(k), q, Hk(l));
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t kmax = 1;
  d[0] = 1;
  d[1] = dot(B(1), B(1));
  require(d[1] != 0, ErrorKind::precondition, "LLL input vectors are dependent");

  auto swapi = [&](std::size_t k) {
    std::swap(B(k), B(k - 1));
    std::swap(Hk(k), Hk(k - 1));
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class l = lam[k][k - 1];
    mpz_class Bv = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      mpz_class t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
      lam[i][k - 1] = (Bv * t + l * lam[i][k]) / d[k];
    }
    d[k - 1] = Bv;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          require(u != 0, ErrorKind::precondition, "LLL input vectors are dependent");
        }
      }
    }
    for (;;) {
      redi(k, k - 1);
      // Lovasz: d_k d_{k-2} >= delta d_{k-1}^2 - lambda^2, scaled by dd.
      mpz_class lhs = dd * d[k] * d[k - 2];
      mpz_class rhs = dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1];
      if (lhs < rhs) {
        swapi(k);
        if (k > 2) --k;
        continue;
      }
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
      break;
    }
  }
  r.d = d;
  r.lambda.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j < i; ++j) r.lambda[i - 1][j - 1] = lam[i][j];
  }
  return r;
}

namespace {

class Enumerator {
 public:
  Enumerator(const LllResult& red, long double radius_sq,
             const std::function<bool(const std::vector<mpz_class>&)>& visit, std::uint64_t budget,
             std::uint64_t& nodes)
      : m_(red.basis.size()), R2_(radius_sq), visit_(visit), budget_(budget), nodes_(nodes) {
    mu_.assign(m_, std::vector<long double>(m_, 0));
    bstar_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      bstar_[i] = to_ld(mpq_class(red.d[i + 1], red.d[i]));
      for (std::size_t j = 0; j < i; ++j) mu_[i][j] = to_ld(mpq_class(red.lambda[i][j], red.d[j + 1]));
    }
    x_.assign(m_, 0);
    xz_.assign(m_, 0);
  }

  bool run() { return rec(m_ - 1, 0, true); }

 private:
  bool rec(std::size_t i, long double partial, bool top_zero) {
    long double c = 0;
    for (std::size_t j = i + 1; j < m_; ++j) c -= x_[j] * mu_[j][i];
    const long double r = std::nearbyint(c);
    const long double s = c >= r ? 1 : -1;
    // Zig-zag r, r+s, r-s, r+2s, ...: distances grow along each side.
    bool done[2] = {false, false};
    for (long step = 0; !(done[0] && done[1]); ++step) {
      for (int side = 0; side < 2; ++side) {
        if (done[side] || (step == 0 && side == 1)) continue;
        long double xi = r + (side == 0 ? s : -s) * static_cast<long double>(step);
        long double diff = xi - c;
        long double l = partial + diff * diff * bstar_[i];
        if (l > R2_) {
          done[side] = true;
          if (step == 0) done[1] = true;
          continue;
        }
        if (top_zero && xi < 0) continue;
        if (++nodes_ > budget_) {
          throw Error(ErrorKind::budget_exhausted,
                      "enumeration exceeded " + std::to_string(budget_) + " nodes");
        }
        x_[i] = xi;
        bool zero_here = top_zero && xi == 0;
        if (i == 0) {
          if (zero_here) continue;
          for (std::size_t k = 0; k < m_; ++k) xz_[k] = static_cast<long>(x_[k]);
          if (visit_(xz_)) return true;
        } else if (rec(i - 1, l, zero_here)) {
          return true;
        }
      }
    }
    x_[i] = 0;
    return false;
  }

  std::size_t m_;
  long double R2_;
  const std::function<bool(const std::vector<mpz_class>&)>& visit_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<std::vector<long double>> mu_;
  std::vector<long double> bstar_;
  std::vector<long double> x_;
  std::vector<mpz_class> xz_;
};

// Radius schedule: box scale squared times 1, 2, 4, ... up to m (the sup-norm
// box lies inside the L2 ball of radius sqrt(m) times its side).
bool schedule(const LllResult& red, long double unit_sq,
              const std::function<bool(const std::vector<mpz_class>&)>& visit,
              std::uint64_t budget, EnumerationStats& stats) {
  const long double m = static_cast<long double>(red.basis.size());
  const long double slack = 1 + 1e-9L;
  for (long double f = 1;; f *= 2) {
    long double r = std::min(f, m);
    stats.final_radius_sq = static_cast<double>(r);
    if (enumerate_short(red, r * unit_sq * slack, visit, budget, stats.nodes)) return true;
    if (r >= m) return false;
  }
}

}  // namespace

bool enumerate_short(const LllResult& reduced, long double radius_sq,
                     const std::function<bool(const std::vector<mpz_class>&)>& visit,
                     std::uint64_t budget, std::uint64_t& nodes) {
  Enumerator e(reduced, radius_sq, visit, budget, nodes);
  return e.run();
}

ArchSolution solve_arch(const ArchLinearFormsProblem& pb, std::uint64_t budget) {
  const std::size_t m = pb.B.size();
  require(m >= 1 && pb.lambda.size() == m, ErrorKind::precondition, "dimension mismatch");
  for (const auto& row : pb.B) require(row.size() == m, ErrorKind::precondition, "B must be square");
  require(budget >= 1, ErrorKind::precondition, "budget must be positive");
  const mpfr_prec_t prec = pb.B[0][0].prec();
  long max_lambda_bits = 0;
  for (const auto& l : pb.lambda) {
    require(l.is_positive(), ErrorKind::precondition, "bounds must be positive");
    max_lambda_bits = std::max(max_lambda_bits, mpfr_get_exp(l.upper().get()));
  }
  // Scale so that rounding the normalized matrix perturbs B a by far less than
  // the box for any |a| up to the largest bound.
  const long K = 64 + std::max(0L, max_lambda_bits) + static_cast<long>(std::log2(m) + 1);

  // Column j of the scaled matrix is the lattice vector attached to e_j.
  IntMatrix cols(m, std::vector<mpz_class>(m));
  BigFloat t(prec + K + 64);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      RealBall v = pb.B[i][j] / pb.lambda[i];
      BigFloat mid = v.midpoint();
      mpfr_mul_2si(t.get(), mid.get(), K, MPFR_RNDN);
      mpfr_get_z(cols[j][i].get_mpz_t(), t.get(), MPFR_RNDN);
    }
  }
  LllResult red = lll_reduce(cols);

  // |det| of the normalized matrix must be 1: log2 sqrt(d_m) = K m.
  {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, red.d[m].get_mpz_t());
    double log2det = 0.5 * (std::log2(mant) + static_cast<double>(exp));
    require(std::fabs(log2det - static_cast<double>(K) * static_cast<double>(m)) < 0.5,
            ErrorKind::precondition, "|det B| differs from the product of the bounds");
  }

  ArchSolution sol;
  auto visit = [&](const std::vector<mpz_class>& x) {
    std::vector<mpz_class> a(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
      if (x[k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) a[j] += x[k] * red.transform[k][j];
    }
    std::vector<RealBall> b;
    b.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      RealBall s(prec, 0L);
      for (std::size_t j = 0; j < m; ++j) {
        if (a[j] != 0) s += pb.B[i][j] * RealBall(prec, a[j]);
      }
      RealBall mag = abs(s);
      bool ok = i + 1 < m ? certainly_lt(mag, pb.lambda[i]) : certainly_le(mag, pb.lambda[i]);
      if (!ok) return false;
      b.push_back(s);
    }
    sol.a = std::move(a);
    sol.b = std::move(b);
    return true;
  };
  long double unit = std::ldexp(1.0L, static_cast<int>(2 * K));
  if (!schedule(red, unit, visit, budget, sol.stats)) {
    throw Error(ErrorKind::certification_failed,
                "no enumerated vector could be certified inside the box; raise the precision");
  }
  return sol;
}

IntMatrix congruence_kernel(const IntMatrix& forms, const mpz_class& modulus, mpz_class* det) {
  require(!forms.empty(), ErrorKind::precondition, "no forms given");
  require(modulus >= 1, ErrorKind::precondition, "modulus must be positive");
  const std::size_t dloc = forms.size(), w = forms[0].size();
  for (const auto& f : forms) require(f.size() == w, ErrorKind::precondition, "ragged forms");
  const std::size_t cols = dloc + w;
  // Rows (F e_j | e_j) and (modulus e_i | 0); the HNF rows with a zero
  // F-part span the kernel.
  IntMatrix G;
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<mpz_class> row(cols, 0);
    for (std::size_t i = 0; i < dloc; ++i) {
      mpz_mod(row[i].get_mpz_t(), forms[i][j].get_mpz_t(), modulus.get_mpz_t());
    }
    row[dloc + j] = 1;
    G.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < dloc; ++i) {
    std::vector<mpz_class> row(cols, 0);
    row[i] = modulus;
    G.push_back(std::move(row));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < G.size(); ++c) {
    for (std::size_t i = r + 1; i < G.size(); ++i) {
      if (G[i][c] == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), G[r][c].get_mpz_t(), G[i][c].get_mpz_t());
      mpz_class u = G[r][c] / g, v = G[i][c] / g;
      for (std::size_t k = c; k < cols; ++k) {
        mpz_class a = G[r][k], b = G[i][k];
        G[r][k] = s * a + t * b;
        G[i][k] = u * b - v * a;
      }
    }
    if (G[r][c] == 0) continue;
    if (G[r][c] < 0) {
      for (auto& e : G[r]) e = -e;
    }
    for (std::size_t k = 0; k < r; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), G[k][c].get_mpz_t(), G[r][c].get_mpz_t());
      if (q != 0) axpy(G[k], q, G[r]);
    }
    ++r;
  }
  IntMatrix out;
  mpz_class prod = 1;
  for (const auto& row : G) {
    bool zero_f = true;
    for (std::size_t i = 0; i < dloc; ++i) zero_f = zero_f && row[i] == 0;
    if (!zero_f) continue;
    std::vector<mpz_class> v(row.begin() + static_cast<long>(dloc), row.end());
    bool nonzero = false;
    for (const auto& e : v) nonzero = nonzero || e != 0;
    if (!nonzero) continue;
    for (const auto& e : v) {
      if (e != 0) {
        prod *= e;
        break;
      }
    }
    out.push_back(std::move(v));
  }
  require(out.size() == w, ErrorKind::internal, "kernel lattice has the wrong rank");
  if (det) *det = prod;
  return out;
}

PadicSolution solve_padic(const PadicLinearFormsProblem& pb, std::uint64_t budget) {
  require(pb.f >= 1, ErrorKind::precondition, "f must be at least 1");
  require(pb.Lambda >= 1, ErrorKind::precondition, "Lambda must be at least 1");
  require(mpz_probab_prime_p(pb.p.get_mpz_t(), 30) != 0, ErrorKind::precondition, "p must be prime");
  mpz_class mod;
  mpz_pow_ui(mod.get_mpz_t(), pb.p.get_mpz_t(), pb.f);
  const std::size_t w = pb.forms.at(0).size();
  PadicSolution sol;
  IntMatrix kernel = congruence_kernel(pb.forms, mod, &sol.kernel_det);
  LllResult red = lll_reduce(kernel);

  mpz_class vol_needed;  // p^(d f)
  mpz_pow_ui(vol_needed.get_mpz_t(), mod.get_mpz_t(), pb.forms.size());

  mpz_class L = pb.Lambda;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto visit = [&](const std::vector<mpz_class>& x) {
      std::vector<mpz_class> a(w, 0);
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] != 0) axpy(a, -x[k], red.basis[k]);
      }
      for (const auto& e : a) {
        if (abs(e) > L) return false;
      }
      for (const auto& f : pb.forms) {
        if (!mpz_divisible_p(mpz_class(dot(f, a)).get_mpz_t(), mod.get_mpz_t())) return false;
      }
      sol.a = a;
      return true;
    };
    long double unit = to_ld(L) * to_ld(L);
    if (schedule(red, unit, visit, budget, sol.stats)) {
      sol.Lambda_used = L;
      sol.widened = attempt > 0;
      return sol;
    }
    mpz_class vol;
    mpz_pow_ui(vol.get_mpz_t(), L.get_mpz_t(), w);
    if (vol >= vol_needed) break;
    L *= pb.p;
  }
  throw Error(ErrorKind::no_solution, "no vector in the congruence lattice within the sup-norm bound");
}

}  // namespace equilog
