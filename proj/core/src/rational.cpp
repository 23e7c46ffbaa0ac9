#include "scorevote/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace scorevote {

namespace {

BigInt parse_big_int(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("sign without digits: '" + text + "'");
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed integer literal: '" + text + "'");
  }
  return BigInt(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto strip = [](const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  const std::string t = strip(text);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  const std::size_t slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_big_int(t));
  BigInt num = parse_big_int(strip(t.substr(0, slash)));
  BigInt den = parse_big_int(strip(t.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

Rational rationalize(double x, long long max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  const bool neg = x < 0;
  double r = std::fabs(x);

  // Convergents p/q of the continued fraction of r; stop before q exceeds the cap.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = r;
  for (int iter = 0; iter < 64; ++iter) {
    const double fa = std::floor(frac);
    if (fa > static_cast<double>(std::numeric_limits<long long>::max() / 4)) break;
    const long long a = static_cast<long long>(fa);
    if (q1 != 0 && a > (max_denominator - q0) / q1) break;  // next q would exceed cap
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = frac - fa;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational best(p1, q1 == 0 ? 1 : q1);
  // A semiconvergent built on the last two convergents can be admissible and
  // strictly closer than the last full convergent.
  if (q1 != 0 && (q0 != 0 || p0 != 0)) {
    const long long k = (max_denominator - q0) / q1;
    if (k > 0) {
      const Rational semi(k * p1 + p0, k * q1 + q0);
      if (std::fabs(to_double(semi) - r) < std::fabs(to_double(best) - r)) best = semi;
    }
  }
  return neg ? Rational(-best) : best;
}

}  // namespace scorevote
