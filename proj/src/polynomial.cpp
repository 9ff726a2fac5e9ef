#include "critpt/polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace critpt {

PolynomialN PolynomialN::operator+(const PolynomialN& o) const {
  std::vector<BigRational> c(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return PolynomialN(std::move(c));
}

PolynomialN PolynomialN::operator-(const PolynomialN& o) const {
  std::vector<BigRational> c(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
  return PolynomialN(std::move(c));
}

PolynomialN PolynomialN::operator*(const PolynomialN& o) const {
  if (is_zero() || o.is_zero()) return PolynomialN();
  std::vector<BigRational> c(coeffs_.size() + o.coeffs_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return PolynomialN(std::move(c));
}

PolynomialN PolynomialN::operator*(const BigRational& c) const {
  if (c == 0) return PolynomialN();
  std::vector<BigRational> out = coeffs_;
  for (auto& x : out) x *= c;
  return PolynomialN(std::move(out));
}

PolynomialN PolynomialN::pow(int e) const {
  PolynomialN out(BigRational(1));
  PolynomialN b = *this;
  while (e > 0) {
    if (e & 1) out = out * b;
    if (e >>= 1) b = b * b;
  }
  return out;
}

std::pair<PolynomialN, PolynomialN> PolynomialN::divmod(const PolynomialN& d) const {
  if (d.is_zero()) throw numeric_error("polynomial division by zero");
  std::vector<BigRational> r = coeffs_;
  const int dd = d.degree();
  const BigRational& lead = d.leading();
  std::vector<BigRational> q;
  if (degree() >= dd) q.assign(static_cast<std::size_t>(degree() - dd + 1), BigRational(0));
  for (int k = degree() - dd; k >= 0; --k) {
    BigRational factor = r[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int i = 0; i <= dd; ++i)
      r[static_cast<std::size_t>(k + i)] -= factor * d.coeff(i);
  }
  if (!r.empty()) r.resize(static_cast<std::size_t>(std::max(dd, 0)));
  return {PolynomialN(std::move(q)), PolynomialN(std::move(r))};
}

BigRational PolynomialN::eval(const BigRational& x) const {
  BigRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double PolynomialN::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

namespace {

using IntPoly = std::vector<BigInt>;  // ascending, trailing nonzero

// clear denominators and divide by integer content; sign of the leading
// coefficient made positive
IntPoly primitive_int(const PolynomialN& p) {
  BigInt lcm(1);
  for (const auto& c : p.coeffs()) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
  IntPoly out(p.coeffs().size());
  BigInt content(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& c = p.coeffs()[i];
    out[i] = rat_num(c) * (lcm / rat_den(c));
    content = boost::multiprecision::gcd(content, boost::multiprecision::abs(out[i]));
  }
  if (content > 1)
    for (auto& x : out) x /= content;
  if (!out.empty() && out.back() < 0)
    for (auto& x : out) x = -x;
  return out;
}

void trim_int(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  BigInt content(0);
  for (const auto& x : p) content = boost::multiprecision::gcd(content, boost::multiprecision::abs(x));
  if (content > 1)
    for (auto& x : p) x /= content;
  if (!p.empty() && p.back() < 0)
    for (auto& x : p) x = -x;
}

// pseudo-remainder of a by b (deg a >= deg b), integer arithmetic throughout
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const BigInt& lead = b.back();
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    BigInt factor = a.back();
    for (auto& x : a) x *= lead;
    for (int i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(shift + i)] -= factor * b[static_cast<std::size_t>(i)];
    trim_int(a);
  }
  return a;
}

}  // namespace

PolynomialN PolynomialN::gcd(PolynomialN a, PolynomialN b) {
  // primitive PRS over the integers, then monic
  IntPoly u = primitive_int(a), v = primitive_int(b);
  if (u.empty()) std::swap(u, v);
  while (!v.empty()) {
    if (u.size() < v.size()) std::swap(u, v);
    IntPoly r = pseudo_rem(u, v);
    make_primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  if (u.empty()) return PolynomialN();
  std::vector<BigRational> monic(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) monic[i] = BigRational(u[i], u.back());
  return PolynomialN(std::move(monic));
}

std::string PolynomialN::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const BigRational c = coeff(k);
    if (c == 0) continue;
    const bool first = out.empty();
    BigRational a = c;
    if (a < 0) {
      out += first ? "-" : "-";
      a = -a;
    } else if (!first) {
      out += "+";
    }
    const bool unit = (a == 1);
    if (k == 0) {
      out += rat_str(a);
    } else {
      if (!unit) out += rat_str(a) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace {

// scale num/den jointly so all coefficients are integers with joint content 1
// and the denominator has a positive leading coefficient
void canonical_scale(PolynomialN& num, PolynomialN& den) {
  BigInt lcm_den(1);
  auto fold_lcm = [&](const PolynomialN& p) {
    for (const auto& c : p.coeffs()) {
      BigInt d = rat_den(c);
      lcm_den = boost::multiprecision::lcm(lcm_den, d);
    }
  };
  fold_lcm(num);
  fold_lcm(den);
  BigInt gcd_num(0);
  auto fold_gcd = [&](const PolynomialN& p) {
    for (const auto& c : p.coeffs()) {
      BigInt n = rat_num(c) * (lcm_den / rat_den(c));
      gcd_num = boost::multiprecision::gcd(gcd_num, boost::multiprecision::abs(n));
    }
  };
  fold_gcd(num);
  fold_gcd(den);
  if (gcd_num == 0) gcd_num = 1;
  BigRational scale(lcm_den, gcd_num);
  if (den.leading() * scale < 0) scale = -scale;
  num = num * scale;
  den = den * scale;
}

}  // namespace

RationalFunctionN::RationalFunctionN(PolynomialN num, PolynomialN den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw numeric_error("rational function with zero denominator");
  normalize();
}

void RationalFunctionN::normalize() {
  if (num_.is_zero()) {
    den_ = PolynomialN(BigRational(1));
    return;
  }
  PolynomialN g = PolynomialN::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  canonical_scale(num_, den_);
}

RationalFunctionN RationalFunctionN::operator+(const RationalFunctionN& o) const {
  return RationalFunctionN(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunctionN RationalFunctionN::operator-(const RationalFunctionN& o) const {
  return RationalFunctionN(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunctionN RationalFunctionN::operator*(const RationalFunctionN& o) const {
  return RationalFunctionN(num_ * o.num_, den_ * o.den_);
}

RationalFunctionN RationalFunctionN::operator*(const BigRational& c) const {
  return RationalFunctionN(num_ * c, den_);
}

RationalFunctionN RationalFunctionN::operator/(const RationalFunctionN& o) const {
  if (o.is_zero()) throw numeric_error("division by zero rational function");
  return RationalFunctionN(num_ * o.den_, den_ * o.num_);
}

BigRational RationalFunctionN::eval(const BigRational& x) const {
  BigRational d = den_.eval(x);
  if (d == 0) throw numeric_error("rational function evaluated at a pole");
  return num_.eval(x) / d;
}

double RationalFunctionN::eval(double x) const { return num_.eval(x) / den_.eval(x); }

std::string RationalFunctionN::str(const std::string& var) const {
  // a single-monomial numerator never needs parentheses; the denominator does
  // unless it prints as one division-safe token
  std::string num_str =
      num_.term_count() > 1 ? "(" + num_.str(var) + ")" : num_.str(var);
  if (is_polynomial()) {
    if (den_.coeff(0) == 1) return num_.str(var);
    return num_str + "/" + rat_str(den_.coeff(0));
  }
  const bool den_plain = den_.term_count() == 1 && den_.leading() == 1;
  std::string den_str = den_plain ? den_.str(var) : "(" + den_.str(var) + ")";
  return num_str + "/" + den_str;
}

}  // namespace critpt
