#ifndef MINET_MODEL_POLYNOMIAL_HPP
#define MINET_MODEL_POLYNOMIAL_HPP

#include <initializer_list>
#include <string>
#include <vector>

namespace minet::model {

/// Dense real polynomial, coefficients stored lowest power first.
class Polynomial
{
public:
  Polynomial() = default;

  Polynomial(std::initializer_list<double> lowToHigh)
    : m_coeffs(lowToHigh)
  {
    trim();
  }

  explicit
  Polynomial(std::vector<double> lowToHigh)
    : m_coeffs(std::move(lowToHigh))
  {
    trim();
  }

  /// Polynomial(x) == x.
  static Polynomial
  identity()
  {
    return {0.0, 1.0};
  }

  /// Coefficient of x^i; zero past the degree.
  double
  operator[](std::size_t i) const noexcept
  {
    return i < m_coeffs.size() ? m_coeffs[i] : 0.0;
  }

  /// Degree of the zero polynomial is reported as 0.
  std::size_t
  degree() const noexcept
  {
    return m_coeffs.empty() ? 0 : m_coeffs.size() - 1;
  }

  double
  operator()(double x) const noexcept;

  Polynomial&
  operator+=(const Polynomial& o);

  Polynomial&
  operator-=(const Polynomial& o);

  Polynomial&
  operator*=(double k);

  friend Polynomial
  operator+(Polynomial a, const Polynomial& b)
  {
    return a += b;
  }

  friend Polynomial
  operator-(Polynomial a, const Polynomial& b)
  {
    return a -= b;
  }

  friend Polynomial
  operator*(Polynomial a, double k)
  {
    return a *= k;
  }

  friend Polynomial
  operator*(double k, Polynomial a)
  {
    return a *= k;
  }

  friend Polynomial
  operator*(const Polynomial& a, const Polynomial& b);

  /// Highest power first, e.g. "0.0312n^3 - 0.192n^2 + 2.0714n + 11.25".
  std::string
  toString(char var = 'n', int precision = 6) const;

private:
  void
  trim();

private:
  std::vector<double> m_coeffs;
};

} // namespace minet::model

#endif // MINET_MODEL_POLYNOMIAL_HPP
