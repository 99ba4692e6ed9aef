#include "minet/model/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace minet::model {

void
Polynomial::trim()
{
  while (!m_coeffs.empty() && m_coeffs.back() == 0.0)
    m_coeffs.pop_back();
}

double
Polynomial::operator()(double x) const noexcept
{
  double acc = 0.0;
  for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Polynomial&
Polynomial::operator+=(const Polynomial& o)
{
  if (o.m_coeffs.size() > m_coeffs.size())
    m_coeffs.resize(o.m_coeffs.size(), 0.0);
  for (std::size_t i = 0; i < o.m_coeffs.size(); ++i)
    m_coeffs[i] += o.m_coeffs[i];
  trim();
  return *this;
}

Polynomial&
Polynomial::operator-=(const Polynomial& o)
{
  if (o.m_coeffs.size() > m_coeffs.size())
    m_coeffs.resize(o.m_coeffs.size(), 0.0);
  for (std::size_t i = 0; i < o.m_coeffs.size(); ++i)
    m_coeffs[i] -= o.m_coeffs[i];
  trim();
  return *this;
}

Polynomial&
Polynomial::operator*=(double k)
{
  for (auto& c : m_coeffs)
    c *= k;
  trim();
  return *this;
}

Polynomial
operator*(const Polynomial& a, const Polynomial& b)
{
  if (a.m_coeffs.empty() || b.m_coeffs.empty())
    return {};
  std::vector<double> out(a.m_coeffs.size() + b.m_coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.m_coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.m_coeffs.size(); ++j)
      out[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
  return Polynomial(std::move(out));
}

std::string
Polynomial::toString(char var, int precision) const
{
  if (m_coeffs.empty())
    return "0";
  std::ostringstream os;
  os.precision(precision);
  bool first = true;
  for (std::size_t i = m_coeffs.size(); i-- > 0;) {
    double c = m_coeffs[i];
    if (c == 0.0)
      continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    os << std::abs(c);
    if (i >= 1)
      os << var;
    if (i >= 2)
      os << '^' << i;
    first = false;
  }
  return os.str();
}

} // namespace minet::model
