#ifndef POISSON_FIELD_HPP
#define POISSON_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poisson/errors.hpp"

namespace poisson {

enum class FieldKind { Rationals, Prime, Quadratic };

class Field;

/// Element of a Field, always in canonical form.
///
/// Representation depends on the owning field:
///   - rationals:            qa (reduced, positive denominator)
///   - GF(p):                za in [0, p)
///   - quadratic extension:  pair (a, b) meaning a + b*sqrt(d), components in
///     the base field (za/zb residues for prime base, qa/qb for rationals)
///
/// Elements are immutable values; the field handle is interned and lives for
/// the whole program, so copies are cheap to share across threads.
class Fel {
 public:
  Fel() : f_(nullptr), za_(0), zb_(0) {}

  const Field* field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Fel operator+(const Fel& o) const;
  Fel operator-(const Fel& o) const;
  Fel operator*(const Fel& o) const;
  Fel operator/(const Fel& o) const;
  Fel operator-() const;
  bool operator==(const Fel& o) const;
  bool operator!=(const Fel& o) const { return !(*this == o); }

  Fel inverse() const;
  Fel pow(long long e) const;
  /// Conjugation a + b*sqrt(d) -> a - b*sqrt(d); identity on non-quadratic fields.
  Fel conj() const;

  /// Total order used only for deterministic tie-breaking; no algebraic meaning.
  static bool less(const Fel& x, const Fel& y);

  std::string str() const;

 private:
  friend class Field;
  explicit Fel(const Field* f) : f_(f), za_(0), zb_(0) {}

  const Field* f_;
  std::int64_t za_, zb_;   // finite characteristic
  mpq_class qa_, qb_;      // characteristic zero
};

/// An exact field: the rationals, a prime field GF(p), or a quadratic
/// extension base(sqrt(d)). Instances are interned; pointer equality is
/// field equality.
class Field {
 public:
  static const Field* rationals();
  static const Field* prime(std::int64_t p);                 // throws NotPrime
  static const Field* quadratic(const Field* base, const Fel& d);  // throws DIsSquare
  /// Parses a CLI/file descriptor: q | fp:<p> | qext:q:<d> | qext:fp:<p>:<d>.
  static const Field* parse(const std::string& descriptor);

  FieldKind kind() const { return kind_; }
  std::int64_t characteristic() const { return char_; }
  bool finite() const { return kind_ == FieldKind::Prime || (kind_ == FieldKind::Quadratic && char_ != 0); }
  /// Number of elements; only valid for finite fields.
  mpz_class cardinality() const;
  const Field* base() const { return base_; }
  Fel adjoined_square() const;  // d, as an element of base(); quadratic only
  std::string descriptor() const;

  Fel zero() const;
  Fel one() const;
  Fel from_int(std::int64_t n) const;
  Fel from_mpq(const mpq_class& q) const;  // char 0 only
  /// a + b*sqrt(d) from base-field components; quadratic fields only.
  Fel make_ext(const Fel& a, const Fel& b) const;
  Fel ext_a(const Fel& x) const;  // base-field component a of x
  Fel ext_b(const Fel& x) const;

  /// Elements of a finite field in the tie-break order; element_at(i) is the
  /// i-th, index_of its inverse. Used by the deterministic enumerators.
  std::int64_t element_count() const;  // throws InfiniteField
  Fel element_at(std::int64_t i) const;
  std::int64_t index_of(const Fel& x) const;

  bool is_square(const Fel& x) const { return sqrt_of(x).has_value(); }
  std::optional<Fel> sqrt_of(const Fel& x) const;

  /// Element literal I/O (the cli_io coefficient syntax).
  std::string emit_elem(const Fel& x) const;
  Fel parse_elem(const std::string& text) const;

 private:
  Field() = default;
  Field(const Field&) = delete;

  friend class Fel;

  FieldKind kind_ = FieldKind::Rationals;
  std::int64_t char_ = 0;  // characteristic (0 or p)
  std::int64_t p_ = 0;     // modulus for finite arithmetic
  const Field* base_ = nullptr;
  std::int64_t dz_ = 0;    // adjoined square, finite case
  mpq_class dq_;           // adjoined square, char-0 case

  std::int64_t reduce(std::int64_t v) const;
  std::int64_t inv_mod(std::int64_t a) const;
};

/// Exponentiation by (p-1)/2 decides squareness in GF(p); exposed for tests.
bool euler_is_square_mod(std::int64_t a, std::int64_t p);

}  // namespace poisson

#endif
