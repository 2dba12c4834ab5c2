#include "t2hilb/series.hpp"

#include <algorithm>
#include <sstream>

namespace t2hilb {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, int e) {
  std::vector<Rat> v(e + 1);
  v[e] = c;
  return Poly(std::move(v));
}

Poly Poly::one_minus_t_pow(std::int64_t e) {
  if (e < 1) fail(errc::internal, "1 - t^e needs e >= 1");
  std::vector<Rat> v(e + 1);
  v[0] = 1;
  v[e] = -1;
  return Poly(std::move(v));
}

Rat Poly::coeff(int e) const {
  if (e < 0 || e >= static_cast<int>(c_.size())) return 0;
  return c_[e];
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < c_.size()) v[i] += c_[i];
    if (i < o.c_.size()) v[i] += o.c_[i];
  }
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < c_.size()) v[i] += c_[i];
    if (i < o.c_.size()) v[i] -= o.c_[i];
  }
  return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) v[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(v));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

void Poly::mul_scalar(const Rat& c) {
  if (c == 0) {
    c_.clear();
    return;
  }
  for (Rat& x : c_) x *= c;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(errc::internal, "polynomial division by zero");
  Poly rem = *this;
  if (rem.degree() < d.degree()) return {Poly{}, rem};
  std::vector<Rat> q(rem.degree() - d.degree() + 1);
  const Rat lead = d.c_.back();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Rat f = rem.c_.back() / lead;
    q[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
    rem.trim();
  }
  return {Poly(std::move(q)), rem};
}

Poly Poly::divide_exact(const Poly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) fail(errc::internal, "polynomial division is not exact");
  return q;
}

bool Poly::divisible_by(const Poly& d) const { return divmod(d).second.is_zero(); }

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Poly::integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return is_integer(q); });
}

namespace {

// Integer polynomial helpers for the primitive PRS gcd.
using ZPoly = std::vector<Int>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Int zcontent(const ZPoly& p) {
  Int g = 0;
  for (const Int& c : p) g = gcd(g, c);
  return g;
}

void zdiv_scalar(ZPoly& p, const Int& g) {
  for (Int& c : p) c /= g;
}

// r = lead(b)^(deg a - deg b + 1) * a mod b, the standard pseudo-remainder.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Int lead = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    Int f = a.back();
    for (Int& c : a) c *= lead;
    for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
    ztrim(a);
  }
  return a;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // clear rational denominators; content is irrelevant for a gcd over Q
  auto to_z = [](const Poly& p) {
    Int lcm = 1;
    for (const Rat& c : p.coeffs()) lcm = lcm / ::gcd(lcm, Int(c.get_den())) * c.get_den();
    ZPoly z;
    for (const Rat& c : p.coeffs()) z.push_back(Int(c.get_num() * (lcm / c.get_den())));
    ztrim(z);
    Int cont = zcontent(z);
    if (cont != 0) zdiv_scalar(z, cont);
    return z;
  };
  ZPoly x = to_z(a), y = to_z(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = pseudo_rem(x, y);
    if (!r.empty()) {
      Int cont = zcontent(r);
      zdiv_scalar(r, cont);
    }
    x = std::move(y);
    y = std::move(r);
  }
  if (x.back() < 0)
    for (Int& c : x) c = -c;
  std::vector<Rat> out;
  out.reserve(x.size());
  for (const Int& c : x) out.emplace_back(c);
  return Poly(std::move(out));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << c_[i].get_str();
    if (i > 0) out << "*" << var << "^" << i;
  }
  return out.str();
}

void UnivariateRational::add_num_term(std::int64_t e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = num.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) num.erase(it);
  }
}

UnivariateRational add(const UnivariateRational& a, const UnivariateRational& b) {
  UnivariateRational out;
  // common denominator: multiset max of the factor multiplicities
  out.den = a.den;
  for (const auto& [e, m] : b.den) {
    auto it = out.den.find(e);
    if (it == out.den.end()) out.den[e] = m;
    else it->second = std::max(it->second, m);
  }
  auto accumulate = [&out](const UnivariateRational& r) {
    // numerator times the complement of r's denominator in the common one
    std::map<std::int64_t, Rat> acc = r.num;
    for (const auto& [e, m] : out.den) {
      auto it = r.den.find(e);
      std::int64_t missing = m - (it == r.den.end() ? 0 : it->second);
      for (std::int64_t rep = 0; rep < missing; ++rep) {
        std::map<std::int64_t, Rat> next;
        for (const auto& [ee, c] : acc) {
          next[ee] += c;
          next[ee + e] -= c;
        }
        acc = std::move(next);
      }
    }
    for (const auto& [e, c] : acc) out.add_num_term(e, c);
  };
  accumulate(a);
  accumulate(b);
  if (out.num.empty()) out.den.clear();
  return out;
}

HilbertSeries::HilbertSeries(Poly numerator, std::map<std::int64_t, std::int64_t> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {}

std::vector<Rat> HilbertSeries::power_series(int D) const {
  std::vector<Rat> h(D + 1);
  for (int i = 0; i <= std::min(D, num_.degree()); ++i) h[i] = num_.coeff(i);
  for (const auto& [e, m] : den_)
    for (std::int64_t rep = 0; rep < m; ++rep)
      for (std::int64_t i = e; i <= D; ++i) h[i] += h[i - e];
  return h;
}

bool HilbertSeries::numerator_palindromic() const {
  const int d = num_.degree();
  for (int i = 0; i <= d; ++i)
    if (num_.coeff(i) != num_.coeff(d - i)) return false;
  return true;
}

std::string HilbertSeries::str() const {
  std::string out = "(" + num_.str() + ")";
  if (!den_.empty()) {
    out += " / (";
    bool first = true;
    for (const auto& [e, m] : den_) {
      if (!first) out += " ";
      first = false;
      out += "(1-t^" + std::to_string(e) + ")";
      if (m > 1) out += "^" + std::to_string(m);
    }
    out += ")";
  }
  return out;
}

namespace {

Poly expand_denominator(const std::map<std::int64_t, std::int64_t>& den) {
  Poly d = Poly::constant(1);
  for (const auto& [e, m] : den)
    for (std::int64_t rep = 0; rep < m; ++rep) d *= Poly::one_minus_t_pow(e);
  return d;
}

}  // namespace

HilbertSeries canonicalize(const UnivariateRational& R) {
  if (R.is_zero()) return HilbertSeries(Poly{}, {});

  if (R.num.begin()->first < 0)
    fail(errc::internal, "canonicalize: numerator has negative exponents");
  std::vector<Rat> ncoeffs(R.num.rbegin()->first + 1);
  for (const auto& [e, c] : R.num) ncoeffs[e] = c;
  Poly N(std::move(ncoeffs));
  Poly D = expand_denominator(R.den);

  Poly g = Poly::gcd(N, D);
  if (g.degree() > 0) {
    N = N.divide_exact(g);
    D = D.divide_exact(g);
  }
  // scale so the denominator has constant term 1
  Rat d0 = D.coeff(0);
  if (d0 == 0) fail(errc::internal, "canonicalize: denominator vanishes at 0");
  if (d0 != 1) {
    Rat inv = Rat(1) / d0;
    N.mul_scalar(inv);
    D.mul_scalar(inv);
  }

  std::map<std::int64_t, std::int64_t> factors;
  for (std::int64_t e = D.degree(); e >= 1 && D.degree() > 0; --e) {
    Poly f = Poly::one_minus_t_pow(e);
    while (D.degree() >= e && D.divisible_by(f)) {
      D = D.divide_exact(f);
      ++factors[e];
    }
  }
  if (D.degree() > 0) {
    // Stranded cyclotomic residue: trade it for the smallest (1 - t^E) it
    // divides, moving the cofactor into the numerator. Unreachable on
    // denominators coming from the pipeline; kept for robustness.
    bool fixed = false;
    for (std::int64_t E = D.degree(); E <= 4096 && !fixed; ++E) {
      Poly f = Poly::one_minus_t_pow(E);
      if (f.divisible_by(D)) {
        N *= f.divide_exact(D);
        ++factors[E];
        D = Poly::constant(D.coeff(0) == 0 ? Rat(1) : D.coeff(0));
        fixed = true;
      }
    }
    if (!fixed) fail(errc::internal, "canonicalize: denominator is not a (1-t^e) product");
  }
  if (D.coeff(0) != 1) {
    Rat inv = Rat(1) / D.coeff(0);
    N.mul_scalar(inv);
  }
  if (!N.integral()) fail(errc::internal, "canonicalize: non-integral numerator");
  return HilbertSeries(std::move(N), std::move(factors));
}

HilbertSeries divide_canonical(const HilbertSeries& H, std::int64_t e, std::int64_t mult) {
  UnivariateRational r;
  for (int i = 0; i <= H.numerator().degree(); ++i) r.add_num_term(i, H.numerator().coeff(i));
  r.den = H.denominator();
  r.den[e] += mult;
  return canonicalize(r);
}

namespace {

// Series inverse of p (p(0) != 0) to order M.
std::vector<Rat> series_inverse(const Poly& p, int M) {
  std::vector<Rat> inv(M + 1);
  Rat p0 = p.coeff(0);
  inv[0] = Rat(1) / p0;
  for (int m = 1; m <= M; ++m) {
    Rat acc = 0;
    for (int k = 1; k <= std::min(m, p.degree()); ++k) acc += p.coeff(k) * inv[m - k];
    inv[m] = -acc / p0;
  }
  return inv;
}

LaurentExpansion laurent_from_parts(const Poly& N, const std::map<std::int64_t, std::int64_t>& den,
                                    int M) {
  if (N.is_zero()) return {0, std::vector<Rat>(M + 1)};

  // substitute t = 1 - w in the numerator (Horner in (1 - w))
  Poly one_minus_w(std::vector<Rat>{Rat(1), Rat(-1)});
  Poly Nw;
  for (int k = N.degree(); k >= 0; --k) {
    Nw = Nw * one_minus_w + Poly::constant(N.coeff(k));
  }

  // each (1 - t^e) = w * u_e(w) with u_e(0) = e
  std::int64_t den_order = 0;
  Poly U = Poly::constant(1);
  for (const auto& [e, m] : den) {
    den_order += m;
    std::vector<Rat> u(e);
    for (std::int64_t j = 1; j <= e; ++j)
      u[j - 1] = Rat(binomial(e, j)) * (j % 2 == 1 ? 1 : -1);
    Poly ue{std::move(u)};
    for (std::int64_t rep = 0; rep < m; ++rep) U *= ue;
  }

  const int v = Nw.valuation();
  std::int64_t p = den_order - v;  // may be <= 0 for polynomial-like input
  LaurentExpansion out;
  out.pole_order = std::max<std::int64_t>(p, 0);
  const std::int64_t shift = out.pole_order - p;  // leading zero coefficients

  const int need = static_cast<int>(M + 1);
  std::vector<Rat> inv = series_inverse(U, need);
  out.coefficients.assign(M + 1, Rat(0));
  for (int m = 0; m <= M; ++m) {
    std::int64_t src = m - shift;
    if (src < 0) continue;
    Rat acc = 0;
    for (std::int64_t k = 0; k <= src; ++k) {
      Rat nc = Nw.coeff(static_cast<int>(v + k));
      if (nc != 0) acc += nc * inv[src - k];
    }
    out.coefficients[m] = acc;
  }
  return out;
}

}  // namespace

LaurentExpansion laurent_at_one(const HilbertSeries& H, int M) {
  return laurent_from_parts(H.numerator(), H.denominator(), M);
}

LaurentExpansion laurent_at_one(const UnivariateRational& R, int M) {
  if (R.is_zero()) return {0, std::vector<Rat>(M + 1)};
  if (R.num.begin()->first < 0) fail(errc::internal, "laurent_at_one: negative exponents");
  std::vector<Rat> ncoeffs(R.num.rbegin()->first + 1);
  for (const auto& [e, c] : R.num) ncoeffs[e] = c;
  return laurent_from_parts(Poly(std::move(ncoeffs)), R.den, M);
}

}  // namespace t2hilb
