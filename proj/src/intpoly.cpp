#include "equilog/intpoly.hpp"

#include "equilog/error.hpp"
#include "equilog/modpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace equilog {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t k) {
  std::vector<mpz_class> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<std::size_t> IntPoly::degree() const {
  if (c_.empty()) return std::nullopt;
  return c_.size() - 1;
}

std::size_t IntPoly::deg() const {
  require(!c_.empty(), ErrorKind::precondition, "degree of the zero polynomial");
  return c_.size() - 1;
}

const mpz_class& IntPoly::leading() const {
  require(!c_.empty(), ErrorKind::precondition, "leading coefficient of the zero polynomial");
  return c_.back();
}

const mpz_class& IntPoly::constant_term() const {
  static const mpz_class zero(0);
  return c_.empty() ? zero : c_.front();
}

bool IntPoly::operator<(const IntPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(r));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const mpz_class& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

IntPoly IntPoly::divexact(const mpz_class& s) const {
  IntPoly r = *this;
  for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<mpz_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::reversed() const {
  std::vector<mpz_class> r(c_.rbegin(), c_.rend());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::shifted(const mpz_class& c) const {
  // Taylor shift by repeated synthetic division.
  std::vector<mpz_class> r = c_;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) r[j - 1] += c * r[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::negated_variable() const {
  IntPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpz_class& a = c_[i];
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (!unit) out += mag.get_str() + "*";
    out += "X";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::string IntPoly::to_dense_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += c_[i].get_str();
  }
  return out;
}

namespace {

mpz_class parse_integer(std::string_view s) {
  mpz_class v;
  std::string tmp(s);
  if (tmp.empty() || v.set_str(tmp, 10) != 0) {
    throw Error(ErrorKind::parse, "bad integer '" + tmp + "'");
  }
  return v;
}

IntPoly parse_dense(std::string_view text) {
  std::vector<mpz_class> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    coeffs.push_back(parse_integer(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return IntPoly(std::move(coeffs));
}

IntPoly parse_human(std::string_view text) {
  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool first = true;
  while (i < n) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw Error(ErrorKind::parse, "expected '+' or '-' in '" + std::string(text) + "'");
    }
    first = false;
    std::size_t j = i;
    while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    mpz_class coef = 1;
    bool has_coef = j > i;
    if (has_coef) coef = parse_integer(text.substr(i, j - i));
    i = j;
    if (i < n && text[i] == '*') {
      if (!has_coef) throw Error(ErrorKind::parse, "dangling '*'");
      ++i;
    }
    std::size_t power = 0;
    if (i < n && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      power = 1;
      if (i < n && text[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == i) throw Error(ErrorKind::parse, "missing exponent");
        power = std::stoul(std::string(text.substr(i, k - i)));
        i = k;
      }
    } else if (!has_coef) {
      throw Error(ErrorKind::parse, "empty term in '" + std::string(text) + "'");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += sign * coef;
  }
  if (first) throw Error(ErrorKind::parse, "empty polynomial");
  return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly parse_poly(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw Error(ErrorKind::parse, "empty polynomial");
  bool has_var = s.find_first_of("xX") != std::string::npos;
  if (!has_var && s.find(',') != std::string::npos) return parse_dense(s);
  return parse_human(s);
}

mpz_class l1_norm(const IntPoly& p) {
  mpz_class s = 0;
  for (const auto& a : p.coeffs()) s += abs(a);
  return s;
}

mpz_class l2_norm_sq(const IntPoly& p) {
  mpz_class s = 0;
  for (const auto& a : p.coeffs()) s += a * a;
  return s;
}

mpz_class max_norm(const IntPoly& p) {
  mpz_class m = 0;
  for (const auto& a : p.coeffs()) m = std::max(m, mpz_class(abs(a)));
  return m;
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& a : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  mpz_class c = content(p);
  if (p.leading() < 0) c = -c;
  return p.divexact(c);
}

IntPoly substitute_power(const IntPoly& p, std::size_t n) {
  require(n >= 1, ErrorKind::precondition, "substitute_power needs n >= 1");
  if (p.is_zero()) return p;
  std::vector<mpz_class> r(p.deg() * n + 1);
  for (std::size_t i = 0; i <= p.deg(); ++i) r[i * n] = p[i];
  return IntPoly(std::move(r));
}

std::pair<std::size_t, IntPoly> strip_x_power(const IntPoly& p) {
  if (p.is_zero()) return {0, p};
  std::size_t k = 0;
  while (p.coeffs()[k] == 0) ++k;
  std::vector<mpz_class> r(p.coeffs().begin() + static_cast<std::ptrdiff_t>(k), p.coeffs().end());
  return {k, IntPoly(std::move(r))};
}

ModPoly reduce_mod(const IntPoly& p, const mpz_class& m) { return ModPoly(p, m); }

std::optional<IntPoly> exact_divide(const IntPoly& r, const IntPoly& s) {
  require(!s.is_zero(), ErrorKind::precondition, "division by the zero polynomial");
  if (r.is_zero()) return IntPoly();
  if (r.deg() < s.deg()) return std::nullopt;
  const std::size_t ds = s.deg();
  const mpz_class& ls = s.leading();
  // Cheap necessary condition on constant terms before long division.
  if (s.constant_term() != 0 && r.constant_term() != 0 &&
      !mpz_divisible_p(r.constant_term().get_mpz_t(), s.constant_term().get_mpz_t())) {
    return std::nullopt;
  }
  std::vector<mpz_class> rem = r.coeffs();
  std::vector<mpz_class> quo(r.deg() - ds + 1);
  for (std::size_t k = quo.size(); k-- > 0;) {
    mpz_class& top = rem[k + ds];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), ls.get_mpz_t())) return std::nullopt;
    mpz_class qk;
    mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), ls.get_mpz_t());
    for (std::size_t j = 0; j <= ds; ++j) {
      mpz_submul(rem[k + j].get_mpz_t(), qk.get_mpz_t(), s.coeffs()[j].get_mpz_t());
    }
    quo[k] = std::move(qk);
  }
  for (std::size_t i = 0; i < ds; ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return IntPoly(std::move(quo));
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) a mod b.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r = a.coeffs();
  const std::size_t db = b.deg();
  const mpz_class& lb = b.leading();
  std::size_t dr = a.deg();
  while (true) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty() || r.size() - 1 < db) break;
    dr = r.size() - 1;
    mpz_class top = r[dr];
    for (auto& v : r) v *= lb;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(r[dr - db + j].get_mpz_t(), top.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(r));
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  mpz_class c;
  mpz_class ca = content(a), cb = content(b);
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly u = primitive_part(a), v = primitive_part(b);
  if (u.deg() < v.deg()) std::swap(u, v);
  while (!v.is_zero() && v.deg() > 0) {
    IntPoly r = pseudo_rem(u, v);
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part(r);
  }
  if (!v.is_zero()) return IntPoly::constant(c);  // coprime
  return primitive_part(u) * c;
}

bool is_squarefree(const IntPoly& p) {
  if (p.is_zero()) return false;
  if (p.deg() == 0) return true;
  return gcd(p, p.derivative()).deg() == 0;
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p) {
  require(!p.is_zero(), ErrorKind::precondition, "squarefree decomposition of zero");
  IntPoly f = primitive_part(p);
  std::vector<IntPoly> out;
  if (f.deg() == 0) return out;
  IntPoly fp = f.derivative();
  IntPoly a = gcd(f, fp);
  IntPoly b = *exact_divide(f, a);
  IntPoly c = *exact_divide(fp, a);
  IntPoly d = c - b.derivative();
  while (b.deg() > 0) {
    IntPoly g = gcd(b, d);
    out.push_back(g);
    b = *exact_divide(b, g);
    c = *exact_divide(d, g);
    d = c - b.derivative();
  }
  return out;
}

std::optional<EisensteinCertificate> eisenstein_degree(const IntPoly& r, const mpz_class& q) {
  require(!r.is_zero(), ErrorKind::precondition, "eisenstein_degree of zero");
  mpz_class q2 = q * q;
  if (mpz_divisible_p(r.constant_term().get_mpz_t(), q2.get_mpz_t())) return std::nullopt;
  std::size_t e = 0;
  while (e <= r.deg() && mpz_divisible_p(r[e].get_mpz_t(), q.get_mpz_t())) ++e;
  if (e == 0 || e > r.deg()) return std::nullopt;  // R mod q has nonzero constant, or vanishes
  return EisensteinCertificate{q, e};
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c_.emplace_back(a);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t RatPoly::deg() const {
  require(!c_.empty(), ErrorKind::precondition, "degree of the zero polynomial");
  return c_.size() - 1;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const mpq_class& s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return *this;
  mpq_class inv = 1 / c_.back();
  return RatPoly(*this) * inv;
}

IntPoly RatPoly::to_primitive_int() const {
  mpz_class l = 1;
  for (const auto& a : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<mpz_class> r;
  r.reserve(c_.size());
  for (const auto& a : c_) r.emplace_back(mpz_class(a * l));
  return primitive_part(IntPoly(std::move(r)));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  require(!b.is_zero(), ErrorKind::precondition, "division by the zero polynomial");
  if (a.is_zero() || a.deg() < b.deg()) return {RatPoly(), a};
  std::vector<mpq_class> rem = a.coeffs();
  const std::size_t db = b.deg();
  mpq_class inv = 1 / b.leading();
  std::vector<mpq_class> quo(a.deg() - db + 1);
  for (std::size_t k = quo.size(); k-- > 0;) {
    mpq_class qk = rem[k + db] * inv;
    if (qk == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= qk * b[j];
    quo[k] = qk;
  }
  rem.resize(db);
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly u = a, v = b;
  while (!v.is_zero()) {
    RatPoly r = divmod(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

// ---------------------------------------------------------------------------
// QuotientRing

QuotientRing::QuotientRing(const IntPoly& modulus) : mod_(modulus) {
  require(!modulus.is_zero() && modulus.deg() >= 1, ErrorKind::precondition,
          "quotient ring needs a modulus of degree >= 1");
}

RatPoly QuotientRing::reduce(const RatPoly& a) const { return divmod(a, mod_).second; }

RatPoly QuotientRing::mul(const RatPoly& a, const RatPoly& b) const { return reduce(a * b); }

RatPoly QuotientRing::pow(const RatPoly& a, const mpz_class& e) const {
  RatPoly result(std::vector<mpq_class>{mpq_class(1)});
  RatPoly base = reduce(a);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, base);
  }
  return result;
}

RatPoly QuotientRing::eval(const IntPoly& p, const RatPoly& x) const {
  RatPoly acc;
  RatPoly xr = reduce(x);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = mul(acc, xr);
    acc += RatPoly(std::vector<mpq_class>{mpq_class(p.coeffs()[i])});
  }
  return acc;
}

std::vector<std::vector<mpq_class>> QuotientRing::mult_matrix(const RatPoly& a) const {
  const std::size_t d = degree();
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d));
  RatPoly col = reduce(a);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    col = reduce(col * RatPoly(std::vector<mpq_class>{0, 1}));
  }
  return m;
}

mpq_class QuotientRing::norm(const RatPoly& a) const { return determinant(mult_matrix(a)); }

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    mpq_class inv = 1 / m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      mpq_class f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

RatPoly charpoly(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  // Reduce to upper Hessenberg form by similarity transforms.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][piv], m[i][k]);
    }
    mpq_class inv = 1 / m[k][k - 1];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k - 1] == 0) continue;
      mpq_class f = m[i][k - 1] * inv;
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = 0; j < n; ++j) m[j][k] += f * m[j][i];
    }
  }
  // Characteristic polynomials of the leading principal submatrices.
  std::vector<RatPoly> p(n + 1);
  p[0] = RatPoly(std::vector<mpq_class>{1});
  const RatPoly x(std::vector<mpq_class>{0, 1});
  for (std::size_t k = 1; k <= n; ++k) {
    RatPoly acc = (x - RatPoly(std::vector<mpq_class>{m[k - 1][k - 1]})) * p[k - 1];
    mpq_class t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t *= m[k - i][k - i - 1];
      mpq_class coef = t * m[k - i - 1][k - 1];
      if (coef != 0) acc -= p[k - i - 1] * coef;
    }
    p[k] = std::move(acc);
  }
  return p[n];
}

// ---------------------------------------------------------------------------
// Gaussian rationals

GaussianRational pow(const GaussianRational& z, std::size_t n) {
  GaussianRational result(mpq_class(1));
  GaussianRational base = z;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

GaussianRational eval_exact(const IntPoly& p, const GaussianRational& x) {
  GaussianRational acc;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * x;
    acc.re += p.coeffs()[i];
  }
  return acc;
}

mpq_class eval_exact(const IntPoly& p, const mpq_class& x) { return p.eval(x); }

}  // namespace equilog
