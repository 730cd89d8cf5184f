#pragma once

// Exact scalar fields: the rationals (GMP) and prime fields Z/p.
//
// Every field type K is default-constructible to zero and constructible
// from a long for small integers, so generic code writes K{} and K{1}.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qgd {

using Rational = mpq_class;

template <std::uint32_t P>
class Zp {
  static_assert(P >= 2, "modulus must be at least 2");

 public:
  static constexpr std::uint32_t modulus = P;

  Zp() = default;
  Zp(long v) {  // NOLINT(google-explicit-constructor)
    long r = v % static_cast<long>(P);
    if (r < 0) r += P;
    v_ = static_cast<std::uint32_t>(r);
  }

  std::uint32_t value() const { return v_; }

  friend Zp operator+(Zp a, Zp b) { return raw((a.v_ + b.v_) % P); }
  friend Zp operator-(Zp a, Zp b) { return raw((a.v_ + P - b.v_) % P); }
  friend Zp operator*(Zp a, Zp b) {
    return raw(static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.v_) * b.v_) % P));
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp operator-() const { return raw((P - v_) % P); }
  Zp& operator+=(Zp o) { return *this = *this + o; }
  Zp& operator-=(Zp o) { return *this = *this - o; }
  Zp& operator*=(Zp o) { return *this = *this * o; }
  Zp& operator/=(Zp o) { return *this = *this / o; }
  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return a.v_ != b.v_; }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in Z/p");
    // Fermat; P is prime for every instantiation we dispatch to.
    std::uint64_t result = 1, base = v_;
    std::uint32_t e = P - 2;
    while (e) {
      if (e & 1u) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return raw(static_cast<std::uint32_t>(result));
  }

 private:
  static Zp raw(std::uint32_t v) {
    Zp z;
    z.v_ = v;
    return z;
  }
  std::uint32_t v_ = 0;
};

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr std::uint32_t characteristic = 0;
  static std::string name() { return "Q"; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static std::string to_string(const Rational& a) { return a.get_str(); }
  static Rational parse(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
  }
};

template <std::uint32_t P>
struct FieldTraits<Zp<P>> {
  static constexpr std::uint32_t characteristic = P;
  static std::string name() { return "F" + std::to_string(P); }
  static bool is_zero(const Zp<P>& a) { return a.value() == 0; }
  static std::string to_string(const Zp<P>& a) { return std::to_string(a.value()); }
  static Zp<P> parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Zp<P>(std::stol(s));
    return Zp<P>(std::stol(s.substr(0, slash))) / Zp<P>(std::stol(s.substr(slash + 1)));
  }
};

template <class K>
bool is_zero(const K& a) {
  return FieldTraits<K>::is_zero(a);
}

template <class K>
std::string to_string(const K& a) {
  return FieldTraits<K>::to_string(a);
}

/// Calls f.template operator()<K>() with K = Zp<q>. Only the small primes
/// used for point counting are instantiated.
template <class F>
decltype(auto) dispatch_prime(std::uint32_t q, F&& f) {
  switch (q) {
    case 2: return f.template operator()<Zp<2>>();
    case 3: return f.template operator()<Zp<3>>();
    case 5: return f.template operator()<Zp<5>>();
    case 7: return f.template operator()<Zp<7>>();
    case 11: return f.template operator()<Zp<11>>();
    case 13: return f.template operator()<Zp<13>>();
    default:
      throw std::invalid_argument("unsupported field size q=" + std::to_string(q) +
                                  " (supported primes: 2 3 5 7 11 13)");
  }
}

}  // namespace qgd
