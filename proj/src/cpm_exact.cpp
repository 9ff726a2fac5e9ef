#include "critpt/cpm_exact.hpp"

#include <map>

namespace critpt {

namespace {

using ExpMap = std::map<std::vector<int>, BigRational>;

void check_region(int m, int p) {
  if (m < 1 || p < 0 || p > m)
    throw numeric_error("ordered region needs 1 <= m and 0 <= p <= m");
}

// expand prod over the given linear forms (each a set of variable indices)
// raised to the matching exponents, over n variables
ExpMap expand_forms(const std::vector<std::vector<int>>& forms, const std::vector<int>& powers,
                    int n_vars) {
  ExpMap acc;
  acc.emplace(std::vector<int>(static_cast<std::size_t>(n_vars), 0), BigRational(1));
  for (std::size_t f = 0; f < forms.size(); ++f) {
    for (int rep = 0; rep < powers[f]; ++rep) {
      ExpMap next;
      for (const auto& [exps, coeff] : acc) {
        for (int var : forms[f]) {
          auto key = exps;
          ++key[static_cast<std::size_t>(var)];
          next[key] += coeff;
        }
      }
      acc = std::move(next);
    }
  }
  return acc;
}

// pairwise tree sum; keeps the reduction operands small
RationalFunctionN sum_tree(std::vector<RationalFunctionN> terms) {
  if (terms.empty()) return RationalFunctionN();
  while (terms.size() > 1) {
    std::vector<RationalFunctionN> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms.front();
}

}  // namespace

SignedMonomialSum expand_integrand(int m, int p) {
  check_region(m, p);
  // |prod lambda_j| = (-1)^{m-p} prod lambda_j on Y_p
  ExpMap acc;
  {
    std::vector<int> ones(static_cast<std::size_t>(m), 1);
    acc.emplace(std::move(ones), (m - p) % 2 ? BigRational(-1) : BigRational(1));
  }
  // Delta(lambda) = prod_{i<j} (lambda_i - lambda_j)
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      ExpMap next;
      for (const auto& [exps, coeff] : acc) {
        auto a = exps;
        ++a[static_cast<std::size_t>(i)];
        next[a] += coeff;
        auto b = exps;
        ++b[static_cast<std::size_t>(j)];
        next[b] -= coeff;
      }
      acc = std::move(next);
    }
  SignedMonomialSum out;
  out.terms.reserve(acc.size());
  for (auto& [exps, coeff] : acc)
    if (coeff != 0) out.terms.push_back({coeff, exps});
  return out;
}

RationalFunctionN ordered_region_integral(const std::vector<int>& exponents, int m, int p) {
  check_region(m, p);
  if (static_cast<int>(exponents.size()) != m)
    throw numeric_error("ordered_region_integral: exponent vector must have length m");
  for (int a : exponents)
    if (a < 0) throw numeric_error("ordered_region_integral: exponents must be nonnegative");

  const PolynomialN nn = PolynomialN::variable();

  // positive block: lambda_j = t_j + ... + t_p, weight e^{-sum_i i t_i}
  BigRational positive_part(1);
  if (p > 0) {
    std::vector<std::vector<int>> forms(static_cast<std::size_t>(p));
    std::vector<int> powers(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
      for (int i = j; i < p; ++i) forms[static_cast<std::size_t>(j)].push_back(i);
      powers[static_cast<std::size_t>(j)] = exponents[static_cast<std::size_t>(j)];
    }
    ExpMap expanded = expand_forms(forms, powers, p);
    BigRational sum(0);
    for (const auto& [b, coeff] : expanded) {
      BigRational term = coeff;
      for (int i = 0; i < p; ++i) {
        const int bi = b[static_cast<std::size_t>(i)];
        term *= BigRational(factorial_int(bi));
        term /= rat_pow(BigRational(i + 1), bi + 1);
      }
      sum += term;
    }
    positive_part = sum;
  }

  // negative block: lambda_{p+k} = -(s_1 + ... + s_k); combined weight
  // exponent for s_i is beta_i = c - (m - p - i), c = ((m+2)N - 2)/N, i.e.
  // beta_i = ((p + i + 2) N - 2)/N counting i from 0. Each gap factor
  // contributes b! N^{b+1} / L_i^{b+1} with L_i = (p+i+2)N - 2; the terms are
  // summed over the common denominator prod_i L_i^{B_i+1} so the whole sum
  // reduces once.
  RationalFunctionN negative_part(BigRational(1));
  const int neg = m - p;
  if (neg > 0) {
    std::vector<std::vector<int>> forms(static_cast<std::size_t>(neg));
    std::vector<int> powers(static_cast<std::size_t>(neg));
    int sign_flips = 0;
    for (int k = 0; k < neg; ++k) {
      for (int i = 0; i <= k; ++i) forms[static_cast<std::size_t>(k)].push_back(i);
      powers[static_cast<std::size_t>(k)] = exponents[static_cast<std::size_t>(p + k)];
      sign_flips += exponents[static_cast<std::size_t>(p + k)];
    }
    ExpMap expanded = expand_forms(forms, powers, neg);

    std::vector<int> max_exp(static_cast<std::size_t>(neg), 0);
    for (const auto& [b, coeff] : expanded)
      for (int i = 0; i < neg; ++i)
        max_exp[static_cast<std::size_t>(i)] =
            std::max(max_exp[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);

    std::vector<PolynomialN> lin(static_cast<std::size_t>(neg));
    PolynomialN common_den(BigRational(1));
    for (int i = 0; i < neg; ++i) {
      // L_i positive for N >= 2 since p+i+2 >= 2
      lin[static_cast<std::size_t>(i)] =
          PolynomialN::linear(BigRational(p + i + 2), BigRational(-2));
      common_den = common_den * lin[static_cast<std::size_t>(i)].pow(
                                    max_exp[static_cast<std::size_t>(i)] + 1);
    }

    PolynomialN num_sum;
    for (const auto& [b, coeff] : expanded) {
      BigRational scalar = coeff;
      int n_power = 0;
      PolynomialN cofactor(BigRational(1));
      for (int i = 0; i < neg; ++i) {
        const int bi = b[static_cast<std::size_t>(i)];
        scalar *= BigRational(factorial_int(bi));
        n_power += bi + 1;
        cofactor = cofactor * lin[static_cast<std::size_t>(i)].pow(
                                  max_exp[static_cast<std::size_t>(i)] - bi);
      }
      num_sum = num_sum + cofactor * nn.pow(n_power) * scalar;
    }
    if (sign_flips % 2) num_sum = -num_sum;
    negative_part = RationalFunctionN(std::move(num_sum), std::move(common_den));
  }

  return negative_part * positive_part;
}

RationalFunctionN cpm_expected_number(int m, int q) {
  if (m < 1) throw numeric_error("cpm_expected_number needs m >= 1");
  if (q < m || q > 2 * m) throw numeric_error("cpm_expected_number needs m <= q <= 2m");
  const int p = 2 * m - q;
  SignedMonomialSum integrand = expand_integrand(m, p);
  std::vector<RationalFunctionN> terms;
  terms.reserve(integrand.terms.size());
  for (const auto& term : integrand.terms)
    terms.push_back(ordered_region_integral(term.exponents, m, p) * term.coeff);
  RationalFunctionN sum = sum_tree(std::move(terms));

  // prefactor 2^{(m^2+m+2)/2} / prod_j j!  *  (N-1)^{m+1} / ((m+2)N - 2)
  BigRational scale = rat_pow(BigRational(2), (m * m + m + 2) / 2);
  for (int j = 2; j <= m; ++j) scale /= BigRational(factorial_int(j));
  PolynomialN n_minus_1 = PolynomialN::linear(BigRational(1), BigRational(-1));
  RationalFunctionN prefactor(n_minus_1.pow(m + 1),
                              PolynomialN::linear(BigRational(m + 2), BigRational(-2)));
  return sum * prefactor * scale;
}

RationalFunctionN cpm_total(int m) {
  RationalFunctionN total;
  for (int q = m; q <= 2 * m; ++q) total = total + cpm_expected_number(m, q);
  return total;
}

PolynomialN chern_polynomial(int m) {
  std::vector<BigRational> ascending(static_cast<std::size_t>(m + 1));
  for (int j = 0; j <= m; ++j) {
    BigRational c{binomial_int(m + 1, j)};
    if (j % 2) c = -c;
    ascending[static_cast<std::size_t>(m - j)] = c;  // coefficient of N^{m-j}
  }
  return PolynomialN(std::move(ascending));
}

RationalFunctionN chern_check(int m) {
  RationalFunctionN alt;
  for (int q = m; q <= 2 * m; ++q) {
    RationalFunctionN term = cpm_expected_number(m, q);
    alt = (q - m) % 2 ? alt - term : alt + term;  // (-1)^{m+q} = (-1)^{q-m}
  }
  RationalFunctionN expected{chern_polynomial(m)};
  if (!(alt == expected))
    throw numeric_error("alternating-sum check failed for m=" + std::to_string(m) + ": got " +
                        alt.str() + ", expected " + expected.str());
  return alt;
}

LaurentSeries series_expand(const RationalFunctionN& f, int terms) {
  if (terms <= 0) return LaurentSeries{};
  if (f.is_zero()) {
    LaurentSeries s;
    s.top_degree = 0;
    s.coeffs.assign(static_cast<std::size_t>(terms), LaurentCoeff::from_exact(BigRational(0)));
    return s;
  }
  // substitute N = 1/u: f = u^{deg den - deg num} * num*(u)/den*(u) with
  // reversed coefficient lists, then divide power series at u = 0
  const PolynomialN& num = f.num();
  const PolynomialN& den = f.den();
  const int dn = num.degree(), dd = den.degree();
  auto reversed = [](const PolynomialN& poly, int degree) {
    std::vector<BigRational> rev(static_cast<std::size_t>(degree + 1));
    for (int i = 0; i <= degree; ++i) rev[static_cast<std::size_t>(i)] = poly.coeff(degree - i);
    return rev;
  };
  std::vector<BigRational> a = reversed(num, dn);
  std::vector<BigRational> b = reversed(den, dd);
  std::vector<BigRational> c(static_cast<std::size_t>(terms), BigRational(0));
  for (int k = 0; k < terms; ++k) {
    BigRational acc = k <= dn ? a[static_cast<std::size_t>(k)] : BigRational(0);
    for (int i = 1; i <= std::min(k, dd); ++i)
      acc -= b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
    c[static_cast<std::size_t>(k)] = acc / b[0];
  }
  return LaurentSeries::exact(dn - dd, std::move(c));
}

}  // namespace critpt
