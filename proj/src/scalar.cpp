#include "operadiff/scalar.hpp"

#include <ostream>

namespace operadiff {

namespace {

mpz_class mod_inverse(const mpz_class& a, std::uint64_t p) {
  mpz_class inv;
  mpz_class m(static_cast<unsigned long>(p));
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("denominator not invertible modulo " + std::to_string(p));
  return inv;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  q_.canonicalize();
}

Scalar Scalar::residue(long v, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("characteristic must be prime: " + std::to_string(p));
  Scalar s(v);
  s.reduce_to(p);
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t(text);
  auto trim = [](std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  };
  trim(t);
  if (t.empty()) throw InputError("empty scalar");
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  trim(num);
  trim(den);
  auto valid = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) throw InputError("malformed rational: " + t);
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw InputError("zero denominator: " + t);
  mpq_class q(n, d);
  q.canonicalize();
  return Scalar(q);
}

void Scalar::reduce_to(std::uint64_t p) {
  if (p == 0 || p_ == p) return;
  if (p_ != 0) throw DomainError("mixing scalars of different characteristics");
  mpz_class m(static_cast<unsigned long>(p));
  mpz_class num = q_.get_num() % m;
  if (num < 0) num += m;
  mpz_class v = num * mod_inverse(q_.get_den(), p) % m;
  q_ = mpq_class(v);
  p_ = p;
}

std::uint64_t Scalar::unify(const Scalar& a, const Scalar& b) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
    throw DomainError("mixing scalars of different characteristics");
  return a.p_ != 0 ? a.p_ : b.p_;
}

Scalar Scalar::operator-() const {
  if (p_ == 0) return Scalar(-q_, 0);
  if (q_ == 0) return *this;
  return Scalar(mpq_class(mpz_class(static_cast<unsigned long>(p_)) - q_.get_num()), p_);
}

Scalar Scalar::inverse() const {
  if (q_ == 0) throw DomainError("division by zero");
  if (p_ == 0) return Scalar(1 / q_, 0);
  return Scalar(mpq_class(mod_inverse(q_.get_num(), p_)), p_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  auto p = unify(*this, o);
  if (p == 0) {
    q_ += o.q_;
    return *this;
  }
  Scalar r = o;
  reduce_to(p);
  r.reduce_to(p);
  mpz_class v = (q_.get_num() + r.q_.get_num()) % mpz_class(static_cast<unsigned long>(p));
  q_ = mpq_class(v);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  auto p = unify(*this, o);
  if (p == 0) {
    q_ *= o.q_;
    return *this;
  }
  Scalar r = o;
  reduce_to(p);
  r.reduce_to(p);
  mpz_class v = (q_.get_num() * r.q_.get_num()) % mpz_class(static_cast<unsigned long>(p));
  q_ = mpq_class(v);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  auto p = unify(*this, o);
  Scalar r = o;
  r.reduce_to(p);
  return *this *= r.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.q_ == b.q_;
  auto p = Scalar::unify(a, b);
  Scalar x = a, y = b;
  x.reduce_to(p);
  y.reduce_to(p);
  return x.q_ == y.q_;
}

bool operator<(const Scalar& a, const Scalar& b) { return a.q_ < b.q_; }

std::string Scalar::to_string() const { return q_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace operadiff
