#pragma once

// Exact integer backends for the enumeration pipeline. Two interchangeable
// scalar types are supported:
//
//   Int128   -- 128-bit signed integer with overflow-checked arithmetic.
//               Every operation that could wrap throws OverflowError instead.
//   mpz_class -- GMP arbitrary precision, always exact.
//
// All generic code is written against the small trait surface below
// (sgn_z / gcd_z / z_str / ...) so either backend can be dropped in.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace subcone {

class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (files, stdin, CLI values).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

class Int128 {
 public:
  constexpr Int128() = default;
  constexpr Int128(long long v) : v_(v) {}  // NOLINT: implicit for literals
  constexpr Int128(int v) : v_(v) {}        // NOLINT

  static constexpr Int128 raw(__int128 v) {
    Int128 r;
    r.v_ = v;
    return r;
  }
  constexpr __int128 value() const { return v_; }

  friend Int128 operator+(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a.v_, b.v_, &r.v_)) throw OverflowError("int128 add overflow");
    return r;
  }
  friend Int128 operator-(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r.v_)) throw OverflowError("int128 sub overflow");
    return r;
  }
  friend Int128 operator*(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r.v_)) throw OverflowError("int128 mul overflow");
    return r;
  }
  friend Int128 operator/(Int128 a, Int128 b) {
    if (b.v_ == 0) throw std::domain_error("int128 division by zero");
    if (a.v_ == min_value() && b.v_ == -1) throw OverflowError("int128 div overflow");
    return raw(a.v_ / b.v_);
  }
  friend Int128 operator%(Int128 a, Int128 b) {
    if (b.v_ == 0) throw std::domain_error("int128 modulo by zero");
    if (a.v_ == min_value() && b.v_ == -1) return raw(0);
    return raw(a.v_ % b.v_);
  }
  Int128 operator-() const {
    if (v_ == min_value()) throw OverflowError("int128 negate overflow");
    return raw(-v_);
  }

  Int128& operator+=(Int128 b) { return *this = *this + b; }
  Int128& operator-=(Int128 b) { return *this = *this - b; }
  Int128& operator*=(Int128 b) { return *this = *this * b; }
  Int128& operator/=(Int128 b) { return *this = *this / b; }

  friend constexpr bool operator==(Int128 a, Int128 b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Int128 a, Int128 b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(Int128 a, Int128 b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(Int128 a, Int128 b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(Int128 a, Int128 b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(Int128 a, Int128 b) { return a.v_ >= b.v_; }

 private:
  static constexpr __int128 min_value() {
    return -(((__int128)1) << 126) - (((__int128)1) << 126);
  }
  __int128 v_ = 0;
};

inline int sgn_z(const Int128& a) { return a.value() < 0 ? -1 : (a.value() > 0 ? 1 : 0); }
inline int sgn_z(const mpz_class& a) { return mpz_sgn(a.get_mpz_t()); }

inline Int128 abs_z(const Int128& a) { return a.value() < 0 ? -a : a; }
inline mpz_class abs_z(const mpz_class& a) { return abs(a); }

// gcd with non-negative result; gcd_z(0, 0) == 0.
inline Int128 gcd_z(Int128 a, Int128 b) {
  unsigned __int128 x = a.value() < 0 ? -(unsigned __int128)a.value() : (unsigned __int128)a.value();
  unsigned __int128 y = b.value() < 0 ? -(unsigned __int128)b.value() : (unsigned __int128)b.value();
  while (y != 0) {
    unsigned __int128 t = x % y;
    x = y;
    y = t;
  }
  return Int128::raw((__int128)x);
}
inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline std::string z_str(const Int128& a) {
  if (a.value() == 0) return "0";
  unsigned __int128 x =
      a.value() < 0 ? -(unsigned __int128)a.value() : (unsigned __int128)a.value();
  char buf[48];
  int pos = 48;
  while (x != 0) {
    buf[--pos] = char('0' + (int)(x % 10));
    x /= 10;
  }
  std::string s;
  if (a.value() < 0) s.push_back('-');
  s.append(buf + pos, 48 - pos);
  return s;
}
inline std::string z_str(const mpz_class& a) { return a.get_str(); }

inline long long z_to_ll(const Int128& a) {
  if (a.value() > std::numeric_limits<long long>::max() ||
      a.value() < std::numeric_limits<long long>::min())
    throw OverflowError("value does not fit long long");
  return (long long)a.value();
}
inline long long z_to_ll(const mpz_class& a) {
  if (!a.fits_slong_p()) throw OverflowError("value does not fit long");
  return a.get_si();
}

inline double z_to_double(const Int128& a) { return (double)a.value(); }
inline double z_to_double(const mpz_class& a) { return a.get_d(); }

template <class Z>
Z z_parse(std::string_view s);

template <>
inline Int128 z_parse<Int128>(std::string_view s) {
  if (s.empty()) throw FormatError("empty integer token");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw FormatError("malformed integer token");
  Int128 acc = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw FormatError("malformed integer token");
    acc = acc * 10 + Int128(s[i] - '0');
  }
  return neg ? -acc : acc;
}

template <>
inline mpz_class z_parse<mpz_class>(std::string_view s) {
  if (s.empty()) throw FormatError("empty integer token");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw FormatError("malformed integer token");
  for (size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw FormatError("malformed integer token");
  return mpz_class(std::string(s), 10);
}

}  // namespace subcone
