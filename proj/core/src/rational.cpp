#include "hmo/rational.hpp"

#include <climits>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hmo {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = INT64_MIN;

bool fits(i128 v) { return v > static_cast<i128>(kMin) && v <= static_cast<i128>(INT64_MAX); }

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(i128 v) {
  u128 m = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
  mpz_class r = (hi << 64) + lo;
  if (v < 0) r = -r;
  return r;
}

bool mpz_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) && z.get_si() != LONG_MIN;
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(0), den_(1), big_(nullptr) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    set_from_i128(-static_cast<i128>(num), -static_cast<i128>(den));
  } else {
    set_from_i128(num, den);
  }
}

Rational::Rational(const mpz_class& v) : num_(0), den_(1), big_(nullptr) {
  set_from_mpq(mpq_class(v));
}

Rational::Rational(const mpq_class& v) : num_(0), den_(1), big_(nullptr) {
  mpq_class c(v);
  c.canonicalize();
  set_from_mpq(std::move(c));
}

Rational::Rational(const Rational& o)
    : num_(o.num_), den_(o.den_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  if (o.big_) {
    if (big_) {
      *big_ = *o.big_;
    } else {
      big_ = new mpq_class(*o.big_);
    }
  } else {
    delete big_;
    big_ = nullptr;
  }
  num_ = o.num_;
  den_ = o.den_;
  return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  big_ = o.big_;
  o.big_ = nullptr;
  num_ = o.num_;
  den_ = o.den_;
  return *this;
}

void Rational::set_big_raw(mpq_class&& q) {
  if (big_) {
    *big_ = std::move(q);
  } else {
    big_ = new mpq_class(std::move(q));
  }
  num_ = 0;
  den_ = 1;
}

void Rational::set_from_i128(i128 num, i128 den) {
  if (num == 0) {
    delete big_;
    big_ = nullptr;
    num_ = 0;
    den_ = 1;
    return;
  }
  u128 g = gcd128(uabs(num), static_cast<u128>(den));
  if (g != 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (fits(num) && fits(den)) {
    delete big_;
    big_ = nullptr;
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q;
  q.get_num() = mpz_from_i128(num);
  q.get_den() = mpz_from_i128(den);
  set_big_raw(std::move(q));
}

void Rational::set_from_mpq(mpq_class&& q) {
  if (mpz_small(q.get_num()) && mpz_small(q.get_den())) {
    delete big_;
    big_ = nullptr;
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    return;
  }
  set_big_raw(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  mpz_class n(strip_plus(num), 10);
  mpz_class d(strip_plus(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::short_str() const {
  if (is_integer()) return big_ ? big_->get_num().get_str() : std::to_string(num_);
  return str();
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(static_cast<long>(num_), static_cast<unsigned long>(den_));
  return q;
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  return Rational(floor_z());
}

Rational Rational::ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return Rational(q);
  }
  return Rational(ceil_z());
}

mpz_class Rational::floor_z() const {
  if (!big_) return mpz_class(static_cast<long>(floor().num_));
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil_z() const {
  if (!big_) return mpz_class(static_cast<long>(ceil().num_));
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

std::int64_t Rational::to_int64() const {
  if (big_ || den_ != 1) throw std::overflow_error("rational " + str() + " is not a 64-bit integer");
  return num_;
}

double Rational::approx() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (!big_) {
    Rational r;
    if (num_ < 0) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }
  return Rational(mpq_class(1 / *big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  Rational r;
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      r.set_from_i128(static_cast<i128>(a.num_) + b.num_, 1);
      return r;
    }
    std::uint64_t g = gcd64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_));
    if (g == 1) {
      i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
      i128 den = static_cast<i128>(a.den_) * b.den_;
      if (num == 0) return r;
      if (fits(num) && fits(den)) {
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
      }
      r.set_from_i128(num, den);
      return r;
    }
    i128 gg = static_cast<i128>(g);
    i128 t = static_cast<i128>(a.num_) * (b.den_ / gg) + static_cast<i128>(b.num_) * (a.den_ / gg);
    r.set_from_i128(t, static_cast<i128>(a.den_) * (b.den_ / gg));
    return r;
  }
  r.set_from_mpq(mpq_class(a.to_mpq() + b.to_mpq()));
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Rational r;
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return r;
    if (a.den_ == 1 && b.den_ == 1) {
      r.set_from_i128(static_cast<i128>(a.num_) * b.num_, 1);
      return r;
    }
    std::int64_t g1 = static_cast<std::int64_t>(
        gcd64(static_cast<std::uint64_t>(a.num_ < 0 ? -a.num_ : a.num_), static_cast<std::uint64_t>(b.den_)));
    std::int64_t g2 = static_cast<std::int64_t>(
        gcd64(static_cast<std::uint64_t>(b.num_ < 0 ? -b.num_ : b.num_), static_cast<std::uint64_t>(a.den_)));
    i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
    i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
    if (fits(num) && fits(den)) {
      r.num_ = static_cast<std::int64_t>(num);
      r.den_ = static_cast<std::int64_t>(den);
      return r;
    }
    r.set_from_i128(num, den);
    return r;
  }
  r.set_from_mpq(mpq_class(a.to_mpq() * b.to_mpq()));
  return r;
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

void Rational::add_mul(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  *this = *this + a * b;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  *this = *this - a * b;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a small and a big value never coincide
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add_mul(a[i], b[i]);
  return s;
}

mpz_class lcm_of_denominators(const RationalVector& values) {
  mpz_class l = 1;
  for (const Rational& v : values) {
    mpz_class d = v.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace hmo
