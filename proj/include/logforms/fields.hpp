#ifndef LOGFORMS_FIELDS_HPP
#define LOGFORMS_FIELDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace logforms {

/// Exact rational scalar, the reference field for every identity check.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_zero(const Rat& a) { return a.is_zero(); }

inline Rat inv(const Rat& a) {
  if (a.is_zero()) throw std::invalid_argument("division by zero in Q");
  return Rat(1) / a;
}

inline Rat from_int_like(const Rat&, long long k) { return Rat(k); }

inline std::string coeff_to_string(const Rat& a) { return a.str(); }

inline Rat coeff_from_string(const Rat&, const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin, valid on the whole 64-bit range.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Element of F_p for a word-sized prime p.  The value carries its modulus so
/// one template instantiation serves any p chosen at run time; mixing moduli
/// is rejected.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint32_t p) : v_(static_cast<std::uint32_t>(value % p)), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    check(a, b);
    std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    check(a, b);
    std::uint64_t s = static_cast<std::uint64_t>(a.v_) + a.p_ - b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }
  friend Fp operator-(const Fp& a) {
    return Fp(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    check(a, b);
    return Fp(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_, a.p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * inv(b); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend Fp inv(const Fp& a) {
    if (a.v_ == 0) throw std::invalid_argument("division by zero in F_p");
    // extended Euclid on (v, p); p prime so gcd = 1
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = a.p_, new_r = a.v_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += a.p_;
    return Fp(static_cast<std::uint64_t>(t), a.p_);
  }

 private:
  std::uint32_t v_;
  std::uint32_t p_;

  static void check(const Fp& a, const Fp& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("field mismatch: different prime moduli");
  }
};

inline bool is_zero(const Fp& a) { return a.value() == 0; }

inline Fp from_int_like(const Fp& like, long long k) {
  long long p = static_cast<long long>(like.modulus());
  long long r = k % p;
  if (r < 0) r += p;
  return Fp(static_cast<std::uint64_t>(r), like.modulus());
}

inline std::string coeff_to_string(const Fp& a) { return std::to_string(a.value()); }

inline Fp coeff_from_string(const Fp& like, const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return from_int_like(like, std::stoll(s));
    Fp num = from_int_like(like, std::stoll(s.substr(0, slash)));
    Fp den = from_int_like(like, std::stoll(s.substr(slash + 1)));
    return num / den;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad F_p literal: '" + s + "'");
  }
}

// ---------------------------------------------------------------------------
// Runtime field descriptor
// ---------------------------------------------------------------------------

/// Largest prime below 2^31; default modulus for rank certificates.
inline constexpr std::uint32_t kDefaultPrime = 2147483647u;

struct FieldSpec {
  enum class Kind { rational, prime };

  Kind kind = Kind::rational;
  std::uint32_t p = 0;

  static FieldSpec rational() { return FieldSpec{Kind::rational, 0}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p > 0xffffffffull || !is_prime_u64(p))
      throw std::invalid_argument("modulus is not a word-sized prime: " + std::to_string(p));
    return FieldSpec{Kind::prime, static_cast<std::uint32_t>(p)};
  }

  bool is_rational() const { return kind == Kind::rational; }

  /// The prime must dominate every total degree in play.
  void require_char_above(long long d) const {
    if (kind == Kind::prime && static_cast<long long>(p) <= d)
      throw std::invalid_argument("characteristic " + std::to_string(p) +
                                  " too small for total degree " + std::to_string(d));
  }

  std::string to_string() const {
    return kind == Kind::rational ? "rational" : "prime:" + std::to_string(p);
  }

  static FieldSpec parse(const std::string& s) {
    if (s == "rational") return rational();
    if (s.rfind("prime:", 0) == 0) {
      try {
        return prime(std::stoull(s.substr(6)));
      } catch (const std::invalid_argument&) {
        throw;
      } catch (const std::exception&) {
        throw std::invalid_argument("bad field spec: '" + s + "'");
      }
    }
    throw std::invalid_argument("bad field spec: '" + s + "' (want 'rational' or 'prime:P')");
  }

  bool operator==(const FieldSpec&) const = default;
};

inline Rat exemplar_rat() { return Rat(0); }
inline Fp exemplar_fp(std::uint32_t p) { return Fp(0, p); }

inline void check_char_bound(const Rat&, long long) {}
inline void check_char_bound(const Fp& like, long long d) {
  if (static_cast<long long>(like.modulus()) <= d)
    throw std::invalid_argument("characteristic too small for total degree " + std::to_string(d));
}

}  // namespace logforms

#endif  // LOGFORMS_FIELDS_HPP
