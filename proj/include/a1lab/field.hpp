#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "a1lab/errors.hpp"

namespace a1lab {

/// Exact rationals: reduced fractions of arbitrary-precision integers.
using Rational = mpq_class;

enum class FieldKind { rationals, prime, extension };

/// Description of a coefficient field. For extension fields `modulus` holds the
/// coefficients c_0..c_r (low to high) of the monic defining polynomial.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t p = 0;
  int r = 1;
  std::vector<std::uint64_t> modulus;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);

  bool is_finite() const { return kind != FieldKind::rationals; }
  std::uint64_t characteristic() const { return kind == FieldKind::rationals ? 0 : p; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Deterministic primality for 64-bit integers (Miller-Rabin with a fixed witness set).
bool is_prime(std::uint64_t n);

/// Rabin's irreducibility test for a monic polynomial over F_p (coefficients low to high).
bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p);

/// F_{p^r} with the lexicographically first monic irreducible modulus of degree r.
/// p must be prime and 1 <= r <= 4.
FieldSpec make_extension(std::uint64_t p, int r);

class Gf;

/// Immutable descriptor of a finite field F_q, q = p^r.
///
/// Elements are addressed by a raw 64-bit word. Every field uses raw words in
/// [0, q), which doubles as the enumeration index of the element. Small fields
/// (q <= 2^20) store elements in logarithmic form (0 is zero, i+1 is g^i for a
/// fixed primitive g) and add through a Zech table; larger fields store the
/// base-p packed residue vector directly.
class GaloisField {
 public:
  /// Interned field for a FieldSpec; the returned reference is valid for the
  /// lifetime of the program.
  static const GaloisField& get(const FieldSpec& spec);
  static const GaloisField& get(std::uint64_t p, int r = 1) { return get(make_extension(p, r)); }

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t p() const { return spec_.p; }
  int r() const { return spec_.r; }
  std::uint64_t q() const { return q_; }
  bool is_prime_field() const { return spec_.r == 1; }
  const GaloisField& prime_field() const;

  // raw arithmetic
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (tabled_) {
      if (a == 0) return b;
      if (b == 0) return a;
      const std::uint64_t la = a - 1, lb = b - 1;
      const std::uint64_t d = lb >= la ? lb - la : lb + order_ - la;
      const std::uint32_t z = zech_[d];
      if (z == kNoLog) return 0;
      std::uint64_t s = la + z;
      if (s >= order_) s -= order_;
      return s + 1;
    }
    return add_direct(a, b);
  }
  std::uint64_t neg(std::uint64_t a) const {
    if (tabled_) {
      if (a == 0) return 0;
      std::uint64_t s = a - 1 + neg_shift_;
      if (s >= order_) s -= order_;
      return s + 1;
    }
    return neg_direct(a);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (tabled_) {
      if (a == 0 || b == 0) return 0;
      std::uint64_t s = a + b - 2;
      if (s >= order_) s -= order_;
      return s + 1;
    }
    return mul_direct(a, b);
  }
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

  std::uint64_t zero_raw() const { return 0; }
  std::uint64_t one_raw() const { return one_; }
  std::uint64_t from_int_raw(long long n) const;
  std::uint64_t from_residues_raw(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> residues(std::uint64_t raw) const;
  /// Base-p packed index sum c_i p^i of the residue vector.
  std::uint64_t residue_index(std::uint64_t raw) const;

  Gf zero() const;
  Gf one() const;
  Gf from_int(long long n) const;
  Gf element(std::uint64_t raw) const;
  Gf from_residues(std::span<const std::uint64_t> digits) const;

  /// Image of an element of the prime subfield (or of this field) in this field.
  Gf embed(const Gf& x) const;

  explicit GaloisField(FieldSpec spec);
  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint64_t add_direct(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg_direct(std::uint64_t a) const;
  std::uint64_t mul_direct(std::uint64_t a, std::uint64_t b) const;
  std::vector<std::uint64_t> unpack(std::uint64_t packed) const;
  std::uint64_t pack(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> mul_digits(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b) const;
  void build_tables();

  FieldSpec spec_;
  std::uint64_t q_ = 0;
  std::uint64_t order_ = 0;  // q - 1
  bool tabled_ = false;
  std::uint64_t one_ = 1;
  std::uint64_t neg_shift_ = 0;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint32_t> raw_to_index_;
  std::vector<std::uint32_t> index_to_raw_;
};

/// Element of a finite field. A default-constructed or integer-constructed Gf
/// carries no field and stands for an integer constant; it adopts the field of
/// the first element it is combined with.
class Gf {
 public:
  Gf() = default;
  Gf(long long n) : raw_(static_cast<std::uint64_t>(n)) {}  // NOLINT: implicit for Scalar(0)/Scalar(1)
  Gf(int n) : Gf(static_cast<long long>(n)) {}              // NOLINT
  Gf(const GaloisField& f, std::uint64_t raw) : field_(&f), raw_(raw) {}

  const GaloisField* field() const { return field_; }
  std::uint64_t raw() const { return raw_; }
  bool is_zero() const { return raw_ == 0; }
  bool is_one() const;

  Gf& operator+=(const Gf& o) { return *this = *this + o; }
  Gf& operator-=(const Gf& o) { return *this = *this - o; }
  Gf& operator*=(const Gf& o) { return *this = *this * o; }
  Gf& operator/=(const Gf& o) { return *this = *this / o; }

  friend Gf operator+(const Gf& a, const Gf& b) {
    if (a.field_ == b.field_ && a.field_) return Gf(*a.field_, a.field_->add(a.raw_, b.raw_));
    return mixed(a, b, '+');
  }
  friend Gf operator-(const Gf& a, const Gf& b) {
    if (a.field_ == b.field_ && a.field_) return Gf(*a.field_, a.field_->sub(a.raw_, b.raw_));
    return mixed(a, b, '-');
  }
  friend Gf operator*(const Gf& a, const Gf& b) {
    if (a.field_ == b.field_ && a.field_) return Gf(*a.field_, a.field_->mul(a.raw_, b.raw_));
    return mixed(a, b, '*');
  }
  friend Gf operator/(const Gf& a, const Gf& b) { return a * b.inverse(); }
  Gf operator-() const {
    if (field_) return Gf(*field_, field_->neg(raw_));
    return Gf(-static_cast<long long>(raw_));
  }
  friend bool operator==(const Gf& a, const Gf& b);
  friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }

  Gf inverse() const;
  Gf pow(std::uint64_t e) const;
  std::string to_string() const;

 private:
  static Gf mixed(const Gf& a, const Gf& b, char op);

  const GaloisField* field_ = nullptr;
  std::uint64_t raw_ = 0;
};

/// Total order on raw words; used for canonical sorting of points.
inline bool raw_less(const Gf& a, const Gf& b) { return a.raw() < b.raw(); }

// ---------------------------------------------------------------------------
// Scalar vocabulary shared by the templated polynomial and linear-algebra code.

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Gf& x) { return x.is_zero(); }

inline Rational inverse(const Rational& x) {
  if (is_zero(x)) throw InputError("division by zero");
  return Rational(1) / x;
}
inline Gf inverse(const Gf& x) { return x.inverse(); }

/// The integer n as an element of the field `like` lives in.
inline Rational like(const Rational&, long long n) { return Rational(static_cast<long>(n)); }
Gf like(const Gf& x, long long n);

inline std::uint64_t characteristic(const Rational&) { return 0; }
inline std::uint64_t characteristic(const Gf& x) { return x.field() ? x.field()->p() : 0; }

std::string to_string(const Rational& x);
inline std::string to_string(const Gf& x) { return x.to_string(); }

}  // namespace a1lab
