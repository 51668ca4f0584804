#include "contract/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace contract {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer parse_integer(const std::string& s) {
  std::string body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + s + "'");
  Integer value(body, 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator: '" + raw + "'");
    Integer den(den_text, 10);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + raw + "'");
    Rational value(num, den);
    value.canonicalize();
    return value;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_integer(text));
  std::string int_part = text.substr(0, dot);
  std::string frac_part = text.substr(dot + 1);
  bool negative = false;
  if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) {
    negative = int_part[0] == '-';
    int_part = int_part.substr(1);
  }
  if (int_part.empty()) int_part = "0";
  if (frac_part.empty() || !all_digits(frac_part) || !all_digits(int_part)) {
    throw std::invalid_argument("bad decimal: '" + raw + "'");
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
  Integer num(int_part + frac_part, 10);
  Rational value(num, scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(value) * scale;
  Integer rounded = floor_of(scaled + Rational(1, 2));
  Integer whole = rounded / scale;
  Integer frac = rounded % scale;
  std::string frac_text = frac.get_str();
  while (static_cast<int>(frac_text.size()) < digits) frac_text = "0" + frac_text;
  std::string out = (value < 0 && rounded != 0 ? "-" : "") + whole.get_str();
  if (digits > 0) out += "." + frac_text;
  return out;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational value(Integer(std::to_string(num)), Integer(std::to_string(den)));
  value.canonicalize();
  return value;
}

Rational pow(const Rational& base, int exponent) {
  Rational result = 1;
  Rational factor = base;
  bool invert = exponent < 0;
  unsigned e = static_cast<unsigned>(invert ? -exponent : exponent);
  while (e > 0) {
    if (e & 1U) result *= factor;
    factor *= factor;
    e >>= 1U;
  }
  if (invert) {
    if (result == 0) throw std::domain_error("zero to a negative power");
    result = 1 / result;
  }
  return result;
}

Integer floor_of(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

int ceil_log(const Rational& base, const Rational& target) {
  if (base <= 1) throw std::domain_error("ceil_log needs base > 1");
  int k = 0;
  Rational power = 1;
  while (power < target) {
    power *= base;
    ++k;
  }
  return k;
}

int ceil_log_below(const Rational& base, const Rational& target) {
  if (base <= 0 || base >= 1) throw std::domain_error("ceil_log_below needs 0 < base < 1");
  if (target <= 0) throw std::domain_error("ceil_log_below needs target > 0");
  int k = 0;
  Rational power = 1;
  while (power > target) {
    power *= base;
    ++k;
  }
  return k;
}

}  // namespace contract
