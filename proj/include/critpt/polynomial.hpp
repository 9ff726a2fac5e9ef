#pragma once

#include <string>
#include <vector>

#include "critpt/rational.hpp"
#include "critpt/types.hpp"

namespace critpt {

// Univariate polynomial in the formal variable N with exact rational
// coefficients, ascending powers, trailing coefficient nonzero.
class PolynomialN {
 public:
  PolynomialN() = default;
  explicit PolynomialN(BigRational constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
  }
  explicit PolynomialN(std::vector<BigRational> ascending) : coeffs_(std::move(ascending)) {
    trim();
  }

  static PolynomialN variable() {
    return PolynomialN(std::vector<BigRational>{BigRational(0), BigRational(1)});
  }
  // a*N + b
  static PolynomialN linear(const BigRational& a, const BigRational& b) {
    return PolynomialN(std::vector<BigRational>{b, a});
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  int term_count() const {
    int n = 0;
    for (const auto& c : coeffs_)
      if (c != 0) ++n;
    return n;
  }
  const BigRational& leading() const { return coeffs_.back(); }
  BigRational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return BigRational(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  PolynomialN operator+(const PolynomialN& o) const;
  PolynomialN operator-(const PolynomialN& o) const;
  PolynomialN operator*(const PolynomialN& o) const;
  PolynomialN operator*(const BigRational& c) const;
  PolynomialN operator-() const { return *this * BigRational(-1); }
  bool operator==(const PolynomialN& o) const { return coeffs_ == o.coeffs_; }

  PolynomialN pow(int e) const;

  // exact quotient and remainder: *this == q * d + r with deg r < deg d
  std::pair<PolynomialN, PolynomialN> divmod(const PolynomialN& d) const;

  BigRational eval(const BigRational& x) const;
  double eval(double x) const;

  // monic gcd
  static PolynomialN gcd(PolynomialN a, PolynomialN b);

  // descending-power ASCII form: "5*N^2-8*N+4"
  std::string str(const std::string& var = "N") const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<BigRational> coeffs_;
};

// Exact ratio of polynomials in N, kept reduced (no common polynomial
// factor), with integer coefficients of joint content 1 and a positive
// leading denominator coefficient, so printed forms are canonical.
class RationalFunctionN {
 public:
  RationalFunctionN() : num_(), den_(BigRational(1)) {}
  explicit RationalFunctionN(BigRational constant) : num_(std::move(constant)), den_(BigRational(1)) {}
  explicit RationalFunctionN(PolynomialN num) : num_(std::move(num)), den_(BigRational(1)) {}
  RationalFunctionN(PolynomialN num, PolynomialN den);

  const PolynomialN& num() const { return num_; }
  const PolynomialN& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RationalFunctionN operator+(const RationalFunctionN& o) const;
  RationalFunctionN operator-(const RationalFunctionN& o) const;
  RationalFunctionN operator*(const RationalFunctionN& o) const;
  RationalFunctionN operator*(const BigRational& c) const;
  RationalFunctionN operator/(const RationalFunctionN& o) const;
  bool operator==(const RationalFunctionN& o) const { return num_ == o.num_ && den_ == o.den_; }

  BigRational eval(const BigRational& x) const;
  double eval(double x) const;

  std::string str(const std::string& var = "N") const;

 private:
  void normalize();
  PolynomialN num_;
  PolynomialN den_;
};

}  // namespace critpt
