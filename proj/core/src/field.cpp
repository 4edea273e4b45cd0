#include "koszul/field.hpp"

#include "koszul/error.hpp"

#include <fmt/format.h>

namespace koszul {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw InputError(fmt::format("field characteristic {} is not a supported prime", p));
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : fmt::format("F_{}", p_);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw InternalError("inverse of zero residue");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

namespace {
std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const mpq_class& v, std::uint32_t p) {
  mpz_class num = v.get_num() % p;
  mpz_class den = v.get_den() % p;
  if (den == 0) throw InputError("denominator divisible by the field characteristic");
  std::uint32_t n = reduce(num.get_si(), p);
  std::uint32_t d = reduce(den.get_si(), p);
  return static_cast<std::uint32_t>(std::uint64_t{n} * inverse_mod(d, p) % p);
}
}  // namespace

Scalar::Scalar(Field f, std::int64_t v) : field_(f) {
  if (f.is_rational())
    rational_ = mpq_class(static_cast<long>(v));
  else
    residue_ = reduce(v, f.characteristic());
}

Scalar::Scalar(Field f, const mpq_class& v) : field_(f) {
  if (f.is_rational()) {
    rational_ = v;
    rational_.canonicalize();
  } else {
    residue_ = reduce(v, f.characteristic());
  }
}

Scalar Scalar::from_residue(Field f, std::uint32_t r) {
  Scalar s;
  s.field_ = f;
  s.residue_ = r;
  return s;
}

bool Scalar::is_zero() const {
  return field_.is_rational() ? rational_ == 0 : residue_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rational() ? rational_ == 1 : residue_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rational())
    s.rational_ = -rational_;
  else if (residue_ != 0)
    s.residue_ = field_.characteristic() - residue_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InternalError("division by zero scalar");
  Scalar s = *this;
  if (field_.is_rational())
    s.rational_ = 1 / rational_;
  else
    s.residue_ = inverse_mod(residue_, field_.characteristic());
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) throw InputError("mixed-field arithmetic");
  Scalar s = a;
  if (a.field_.is_rational())
    s.rational_ = a.rational_ + b.rational_;
  else
    s.residue_ = static_cast<std::uint32_t>((std::uint64_t{a.residue_} + b.residue_) %
                                            a.field_.characteristic());
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) throw InputError("mixed-field arithmetic");
  Scalar s = a;
  if (a.field_.is_rational())
    s.rational_ = a.rational_ * b.rational_;
  else
    s.residue_ = static_cast<std::uint32_t>(std::uint64_t{a.residue_} * b.residue_ %
                                            a.field_.characteristic());
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.rational_ == b.rational_ : a.residue_ == b.residue_;
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return rational_.get_str();
  std::uint32_t p = field_.characteristic();
  if (residue_ > p / 2) return fmt::format("-{}", p - residue_);
  return fmt::format("{}", residue_);
}

Scalar parse_scalar(Field f, const std::string& text) {
  mpq_class q;
  std::string t = text;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || q.set_str(t, 10) != 0)
    throw InputError(fmt::format("malformed coefficient '{}'", text));
  if (q.get_den() == 0) throw InputError(fmt::format("zero denominator in '{}'", text));
  q.canonicalize();
  return Scalar(f, q);
}

}  // namespace koszul
