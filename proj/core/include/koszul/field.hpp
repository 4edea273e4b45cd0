#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace koszul {

/// Ground field descriptor: a prime field F_p or the rationals.
class Field {
 public:
  /// Throws InputError unless `p` is a prime below 2^31.
  static Field prime(std::uint32_t p);
  static Field rationals() { return Field(0); }

  bool is_rational() const { return p_ == 0; }
  /// The characteristic; 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Modular inverse of a nonzero residue mod the prime p.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// An exact field element. Residues are kept in [0, p); rationals are
/// canonical GMP fractions.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()) {}
  Scalar(Field f, std::int64_t v);
  Scalar(Field f, const mpq_class& v);

  static Scalar zero(Field f) { return Scalar(f, std::int64_t{0}); }
  static Scalar one(Field f) { return Scalar(f, std::int64_t{1}); }
  /// Wraps an already-reduced residue without checks.
  static Scalar from_residue(Field f, std::uint32_t r);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint32_t residue() const { return residue_; }
  const mpq_class& rational() const { return rational_; }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Residues print in the symmetric range (-p/2, p/2]; rationals as n or n/d.
  std::string to_string() const;

 private:
  Field field_;
  std::uint32_t residue_ = 0;
  mpq_class rational_;
};

/// Parses "3", "-2", "5/7". Throws InputError on malformed text, on a zero
/// denominator, or on a denominator divisible by the characteristic.
Scalar parse_scalar(Field f, const std::string& text);

}  // namespace koszul
