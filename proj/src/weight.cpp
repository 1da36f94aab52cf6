#include "ecte/weight.hpp"

#include <cctype>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ecte {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class digits_to_mpz(std::string_view s) {
  return mpz_class(std::string(s), 10);
}

}  // namespace

Weight::Weight(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Weight Weight::parse(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("not a non-negative rational: '" + std::string(text) + "'");
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    mpz_class d = digits_to_mpz(den);
    if (d == 0) throw bad();
    return Weight(mpq_class(digits_to_mpz(num), d));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = (whole.empty() ? mpz_class(0) : digits_to_mpz(whole)) * scale + digits_to_mpz(frac);
    return Weight(mpq_class(num, scale));
  }
  if (!all_digits(text)) throw bad();
  return Weight(mpq_class(digits_to_mpz(text)));
}

Weight Weight::ratio(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  return Weight(mpq_class(numerator, denominator));
}

Weight& Weight::operator/=(const Weight& o) {
  if (o.is_zero()) throw std::domain_error("division by zero weight");
  v_ /= o.v_;
  return *this;
}

Weight Weight::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return Weight(mpq_class(q));
}

std::string Weight::exact() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Weight::str() const {
  if (is_integer()) return v_.get_num().get_str();
  // Finite decimal iff den = 2^a 5^b; then den divides 10^max(a,b).
  mpz_class den = v_.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) return exact();
  const unsigned long places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = v_.get_num() * scale / v_.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

std::string render(const Weight& w) {
  if (w.is_integer()) return w.exact();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", w.approx());
  return w.exact() + " (~" + buf + ")";
}

}  // namespace ecte
