#include "sweeplab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sweeplab {

BigInt rat_floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational rat_mod(const Rational& x, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("rat_mod: eps must be positive");
  return x - eps * Rational(rat_floor(x / eps));
}

Rational rat_pow2(long e) {
  Rational r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
  }
  r.canonicalize();
  return r;
}

namespace {
bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}
}  // namespace

std::optional<Rational> rat_parse(std::string_view s) {
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  BigInt n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational r;
  mpq_set_num(r.get_mpq_t(), n.get_mpz_t());
  mpq_set_den(r.get_mpq_t(), d.get_mpz_t());
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational rat_sqrt_upper(const Rational& x) {
  if (x < 0) throw std::invalid_argument("rat_sqrt_upper: negative input");
  // sqrt(a/b) = sqrt(a*b)/b <= (isqrt(a*b)+1)/b, exact when a*b is a square.
  BigInt ab = x.get_num() * x.get_den();
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
  if (s * s != ab) s += 1;
  return Rational(s) / Rational(x.get_den());
}

bool rat_is_dyadic(const Rational& x) {
  BigInt d = x.get_den();
  // Canonical form: den > 0; dyadic iff den is a power of two.
  return mpz_popcount(d.get_mpz_t()) == 1;
}

BigInt rat_scaled_by_pow2(const Rational& x, long k) {
  BigInt num;
  mpz_mul_2exp(num.get_mpz_t(), x.get_num_mpz_t(), k);
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  if (r != 0) throw std::invalid_argument("rat_scaled_by_pow2: denominator does not divide 2^k");
  return q;
}

}  // namespace sweeplab
