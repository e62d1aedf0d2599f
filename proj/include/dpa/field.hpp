#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "dpa/errors.hpp"

namespace dpa {

// Coefficient field interface. Two models are provided: the rationals with
// arbitrary-precision arithmetic, and a prime field F_p with p < 2^31.
// All arithmetic is exact; there is no floating point anywhere downstream.
template <class F>
concept FieldType = requires(const F f, const typename F::Element& a,
                             const typename F::Element& b) {
  typename F::Element;
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Element>;
  { f.add(a, b) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, b) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, b) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.eq(a, b) } -> std::convertible_to<bool>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { f.parse(std::string{}) } -> std::convertible_to<typename F::Element>;
  { f.name() } -> std::convertible_to<std::string>;
  { f.same(f) } -> std::convertible_to<bool>;
};

// Rational numbers. Elements are kept canonical: gcd(num, den) = 1 and
// den > 0. mpq_class arithmetic preserves canonical form; only string
// construction needs an explicit canonicalize().
class Rationals {
 public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const {
    Element e;
    e = static_cast<long>(v);
    return e;
  }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in Q");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (b == 0) throw DivisionByZero("division by 0 in Q");
    return a / b;
  }
  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  // Canonical text form: "n" for integers, "p/q" otherwise, q > 0.
  std::string to_string(const Element& a) const { return a.get_str(); }

  Element parse(const std::string& s) const {
    if (s.empty()) throw ParseError("empty rational literal");
    Element e;
    try {
      e = Element(s);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational literal: " + s);
    }
    if (e.get_den() == 0) throw ParseError("zero denominator: " + s);
    e.canonicalize();
    return e;
  }

  std::string name() const { return "Q"; }
  bool same(const Rationals&) const { return true; }
};

// F_p for a prime p < 2^31. Elements are residues in [0, p) stored in a
// uint64_t, so products fit without overflow.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw ParseError("modulus is not prime: " + std::to_string(p));
    if (p >= (std::uint32_t{1} << 31))
      throw ParseError("modulus must be < 2^31");
  }

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return p_ == 1 ? 0 : 1; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
    // extended Euclid; p prime so gcd(a, p) = 1
    std::int64_t t = 0, nt = 1;
    std::int64_t r = p_, nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool eq(Element a, Element b) const { return a == b; }

  std::string to_string(Element a) const { return std::to_string(a); }

  Element parse(const std::string& s) const {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad prime-field literal: " + s);
    }
    if (pos != s.size()) throw ParseError("bad prime-field literal: " + s);
    if (v >= p_)
      throw ParseError("prime-field literal out of range [0, " +
                       std::to_string(p_) + "): " + s);
    return static_cast<Element>(v);
  }

  std::string name() const { return "Fp:" + std::to_string(p_); }
  bool same(const PrimeField& o) const { return p_ == o.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; d <= n / d; d += 2)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
};

static_assert(FieldType<Rationals>);
static_assert(FieldType<PrimeField>);

}  // namespace dpa
