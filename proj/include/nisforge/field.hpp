#pragma once
// Exact fields: Q (gmp rationals) and GF(p^k) with table-driven arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nisforge {

struct FieldSpec {
  int characteristic = 0;
  int extension_degree = 1;
  std::vector<int> modulus;  // low -> high, monic; empty = default table entry
};

class Scalar;

struct FieldData {
  int p = 0;  // 0 for Q
  int k = 1;
  std::vector<int> mod;  // monic, size k+1
  uint32_t q = 0;        // p^k (0 for Q)
  // tables for k > 1
  std::vector<uint32_t> exp_, log_;
  std::vector<uint32_t> pw;  // p^i
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t polymul(uint32_t a, uint32_t b) const;
};

class Field {
 public:
  Field() : d_(nullptr) {}
  static Field Q();
  static Field GF(int p, int k = 1, std::vector<int> modulus = {});
  static Field make(const FieldSpec& s);

  bool is_rational() const { return d_->p == 0; }
  bool finite() const { return d_->p != 0; }
  int characteristic() const { return d_->p; }
  int degree() const { return d_->k; }
  uint32_t size() const { return d_->q; }
  const std::vector<int>& modulus() const { return d_->mod; }
  FieldSpec spec() const;
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long n) const;
  Scalar from_frac(long a, long b) const;
  Scalar from_mpq(const mpq_class& q) const;
  Scalar from_index(uint32_t v) const;  // finite: digit-packed element
  Scalar generator() const;             // class of x in GF(p)[x]/(mod)
  Scalar parse(const std::string& s) const;
  std::vector<Scalar> elements() const;  // finite only
  Scalar random(std::mt19937_64& rng) const;

  const FieldData* data() const { return d_; }
  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }
  bool valid() const { return d_ != nullptr; }

 private:
  friend class Scalar;
  explicit Field(const FieldData* d) : d_(d) {}
  const FieldData* d_;
};

// Value type. Finite field elements are packed base-p digits; rationals live on the heap.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Scalar& o) : f_(o.f_), v_(o.v_) {
    if (o.q_) q_ = std::make_unique<mpq_class>(*o.q_);
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      f_ = o.f_;
      v_ = o.v_;
      if (o.q_) {
        if (q_) *q_ = *o.q_;
        else q_ = std::make_unique<mpq_class>(*o.q_);
      } else {
        q_.reset();
      }
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  Scalar(const FieldData* f, uint32_t v) : f_(f), v_(v) {}
  Scalar(const FieldData* f, const mpq_class& q) : f_(f), q_(std::make_unique<mpq_class>(q)) {}

  bool is_zero() const { return q_ ? sgn(*q_) == 0 : v_ == 0; }
  bool is_one() const;
  const FieldData* fd() const { return f_; }
  Field field() const;
  uint32_t index() const { return v_; }
  mpq_class rational() const { return q_ ? *q_ : mpq_class(0); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inv() const;
  Scalar pow(long e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  std::string str() const;

 private:
  friend class Field;
  const FieldData* f_ = nullptr;  // null: a field-less zero
  uint32_t v_ = 0;
  std::unique_ptr<mpq_class> q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// polynomials over GF(p), low -> high
bool poly_irreducible(const std::vector<int>& f, int p);
bool is_prime(long n);
std::vector<int> default_modulus(int p, int k);

}  // namespace nisforge
