#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittkit {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an operation's preconditions are violated (CLI exit status 2).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration cap is exceeded or an obstruction blocks an
/// operation (CLI exit status 3).
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace exactalg {

/// The ground ring: Z, or Z/n with canonical representatives in [0, n).
/// A prime modulus is flagged as a field.
class RingSpec {
public:
  enum class Kind { Integers, IntegersMod };

  RingSpec() : kind_(Kind::Integers), modulus_(0), is_field_(false) {}

  static RingSpec integers() { return RingSpec(); }
  static RingSpec mod(const Int &n);

  Kind kind() const { return kind_; }
  bool is_integers() const { return kind_ == Kind::Integers; }
  bool is_finite() const { return kind_ == Kind::IntegersMod; }
  bool is_field() const { return is_field_; }
  const Int &modulus() const { return modulus_; }

  Int normalize(const Int &x) const;
  Int add(const Int &a, const Int &b) const { return normalize(a + b); }
  Int sub(const Int &a, const Int &b) const { return normalize(a - b); }
  Int mul(const Int &a, const Int &b) const { return normalize(a * b); }
  Int neg(const Int &a) const { return normalize(-a); }

  bool is_unit(const Int &x) const;
  std::optional<Int> inverse(const Int &x) const;

  /// All canonical elements, finite rings only.
  std::vector<Int> elements() const;
  /// All units, finite rings only.
  std::vector<Int> units() const;

  bool operator==(const RingSpec &o) const {
    return kind_ == o.kind_ && modulus_ == o.modulus_;
  }
  bool operator!=(const RingSpec &o) const { return !(*this == o); }

  std::string str() const;

private:
  Kind kind_;
  Int modulus_;
  bool is_field_;
};

} // namespace exactalg
} // namespace wittkit
