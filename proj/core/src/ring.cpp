#include "wittkit/ring.hpp"

namespace wittkit::exactalg {

RingSpec RingSpec::mod(const Int &n) {
  if (n < 2)
    throw validation_error("RingSpec: modulus must be >= 2, got " + n.get_str());
  RingSpec r;
  r.kind_ = Kind::IntegersMod;
  r.modulus_ = n;
  r.is_field_ = mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
  return r;
}

Int RingSpec::normalize(const Int &x) const {
  if (is_integers())
    return x;
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

bool RingSpec::is_unit(const Int &x) const {
  if (is_integers())
    return x == 1 || x == -1;
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return g == 1;
}

std::optional<Int> RingSpec::inverse(const Int &x) const {
  if (is_integers()) {
    if (x == 1 || x == -1)
      return x;
    return std::nullopt;
  }
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t()) == 0)
    return std::nullopt;
  return inv;
}

std::vector<Int> RingSpec::elements() const {
  if (!is_finite())
    throw validation_error("RingSpec::elements: infinite ring");
  std::vector<Int> out;
  for (Int x = 0; x < modulus_; ++x)
    out.push_back(x);
  return out;
}

std::vector<Int> RingSpec::units() const {
  std::vector<Int> out;
  for (const Int &x : elements())
    if (is_unit(x))
      out.push_back(x);
  return out;
}

std::string RingSpec::str() const {
  if (is_integers())
    return "Z";
  if (is_field())
    return "F" + modulus_.get_str();
  return "Z/" + modulus_.get_str();
}

} // namespace wittkit::exactalg
