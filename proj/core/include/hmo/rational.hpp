#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hmo {

// Exact rational number in lowest terms with a positive denominator.
//
// Values whose numerator and denominator fit in a signed 64-bit word (excluding
// INT64_MIN) are stored inline; anything larger lives in a GMP rational. The
// representation is canonical: a value is stored inline iff it fits, so two
// equal values always have identical representations.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1), big_(nullptr) {}
  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  Rational(I v) : num_(0), den_(1), big_(nullptr) {  // NOLINT: implicit by intent
    if constexpr (std::is_signed_v<I>) {
      set_from_i128(static_cast<__int128>(v), 1);
    } else {
      set_from_i128(static_cast<__int128>(static_cast<unsigned long long>(v)), 1);
    }
  }
  Rational(long long num, long long den);
  explicit Rational(const mpz_class& v);
  explicit Rational(const mpq_class& v);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
    o.big_ = nullptr;
  }
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept;
  ~Rational() { delete big_; }

  // Accepts "p", "-p", "p/q" with decimal integers of any length.
  static Rational parse(std::string_view text);

  // Always "p/q", e.g. "2/1", "-3/4".
  std::string str() const;
  // "p" for integers, "p/q" otherwise.
  std::string short_str() const;

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  bool is_zero() const { return !big_ && num_ == 0; }
  int sign() const;
  bool is_small() const { return big_ == nullptr; }

  // Largest integer <= value / smallest integer >= value.
  Rational floor() const;
  Rational ceil() const;
  // Fractional part value - floor(value), in [0, 1).
  Rational frac() const { return *this - floor(); }
  mpz_class floor_z() const;
  mpz_class ceil_z() const;
  // Throws std::overflow_error unless the value is an integer fitting int64.
  std::int64_t to_int64() const;
  // Approximation for display only; never used on a solve path.
  double approx() const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  // this += a * b without materialising temporaries on the inline path.
  void add_mul(const Rational& a, const Rational& b);
  // this -= a * b.
  void sub_mul(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const;

 private:
  void set_from_i128(__int128 num, __int128 den);  // den > 0, reduces
  void set_from_mpq(mpq_class&& q);                 // q canonical
  void set_big_raw(mpq_class&& q);

  std::int64_t num_;
  std::int64_t den_;
  mpq_class* big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RationalVector = std::vector<Rational>;

// Dot product of equally sized vectors.
Rational dot(const RationalVector& a, const RationalVector& b);

mpz_class lcm_of_denominators(const RationalVector& values);

}  // namespace hmo

template <>
struct std::hash<hmo::Rational> {
  std::size_t operator()(const hmo::Rational& r) const noexcept { return r.hash(); }
};
