#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace operadiff {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad expressions, spec files, arity mismatches.
struct InputError : Error {
  using Error::Error;
};

// A requested computation exceeds a declared truncation bound.
struct TruncationError : Error {
  using Error::Error;
};

// The requested structure does not exist (no counit, unsupported backend, ...).
struct DomainError : Error {
  using Error::Error;
};

// Exact field element. Characteristic 0 means the rationals; otherwise the
// value lives in Z/p with p prime. Plain rationals mix freely with residues:
// the rational is reduced mod p on contact, so integer literals in generic
// code work over every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}
  Scalar(int v) : q_(v) {}
  Scalar(long num, long den);
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Scalar residue(long v, std::uint64_t p);
  static Scalar parse(std::string_view text);

  std::uint64_t characteristic() const { return p_; }
  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return p_ != 0 || q_.get_den() == 1; }
  const mpq_class& rational() const { return q_; }

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  Scalar(mpq_class q, std::uint64_t p) : q_(std::move(q)), p_(p) {}
  static std::uint64_t unify(const Scalar& a, const Scalar& b);
  void reduce_to(std::uint64_t p);

  mpq_class q_{0};
  std::uint64_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

bool is_prime(std::uint64_t p);

}  // namespace operadiff
