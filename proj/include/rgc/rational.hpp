#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rgc {

// Exact rational scalar. Thin value wrapper around GMP's mpq_class; always
// stored in canonical reduced form with positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(int n) : v_(n) {}
  Rational(long num, long den) : v_(static_cast<signed long>(num), static_cast<signed long>(den)) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "a" or "a/b" with optional leading '-'. Returns nullopt on junk.
  static std::optional<Rational> parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        if (!is_int(s)) return std::nullopt;
        return Rational(mpq_class(mpz_class(s)));
      }
      std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!is_int(num) || !is_int(den)) return std::nullopt;
      mpz_class d(den);
      if (d == 0) return std::nullopt;
      mpq_class q(mpz_class(num), d);
      q.canonicalize();
      return Rational(q);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }

  static Rational parse_or_throw(const std::string& s) {
    auto r = parse(s);
    if (!r) throw std::invalid_argument("bad rational literal: " + s);
    return *r;
  }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  // "a" when integral, else "a/b"; b > 0, gcd(a,b) = 1.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  const mpq_class& raw() const { return v_; }

  // True when the value is the square of a rational; if so *root is the
  // nonnegative square root.
  bool is_square(Rational* root = nullptr) const {
    if (sgn(v_) < 0) return false;
    mpz_class num = v_.get_num(), den = v_.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    if (root) {
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      *root = Rational(mpq_class(rn, rd));
    }
    return true;
  }

 private:
  static bool is_int(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class v_;
};

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) { return Rational(n, d); }

// n! as an exact rational, for exponential truncations.
inline Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(mpq_class(f));
}

}  // namespace rgc
