#include "dynacct/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dynacct {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return std::invalid_argument("not a number: '" + s + "'"); };
  if (s.empty()) throw bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string_view rest(s.c_str() + pos, s.size() - pos);
  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_part(rest.substr(e + 1));
    std::string_view digits = exp_part;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) digits.remove_prefix(1);
    if (!all_digits(digits)) throw bad();
    exponent = std::strtol(exp_part.c_str(), nullptr, 10);
    rest = rest.substr(0, e);
  }
  std::string int_part(rest), frac_part;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = std::string(rest.substr(0, dot));
    frac_part = std::string(rest.substr(dot + 1));
  }
  if (int_part.empty() && frac_part.empty()) throw bad();
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw bad();

  std::string all = int_part + frac_part;
  mpz_class numerator(all, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_decimal(const Rational& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = q.get_num() * scale;
  mpz_class den = q.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  // round half away from zero
  mpz_class scaled = (2 * num + den) / (2 * den);
  std::string body = scaled.get_str(10);
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out = body.substr(0, body.size() - static_cast<std::size_t>(digits));
  std::string frac = body.substr(body.size() - static_cast<std::size_t>(digits));
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  if (negative && out != "0") out.insert(0, "-");
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  Rational result = 1, b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace dynacct
