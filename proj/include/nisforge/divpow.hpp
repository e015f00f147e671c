#pragma once
// Divided-power superpolynomials O(m;N|n) and Laurent variants.

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "nisforge/field.hpp"

namespace nisforge {

// Even variables are either divided-power (0 <= r < bound) or Laurent (|r| <= bound, ordinary powers, char 0).
struct PolyRing {
  Field F;
  int m = 0, n = 0;
  std::vector<int> bound;
  std::vector<bool> laurent;
  std::vector<int> N;  // shearing (divided variables in char p); 0 otherwise
  std::vector<std::string> even_names, odd_names;

  static std::shared_ptr<const PolyRing> divided(const Field& F, std::vector<int> N, int n_odd,
                                                 std::vector<std::string> even = {}, std::vector<std::string> odd = {});
  // char 0: ordinary polynomial ring truncated at total exponent cap per variable
  static std::shared_ptr<const PolyRing> polynomial(const Field& F, int m, int cap, int n_odd,
                                                    std::vector<std::string> even = {}, std::vector<std::string> odd = {});
  static std::shared_ptr<const PolyRing> laurent_ring(const Field& F, int window, int n_odd,
                                                      std::vector<std::string> even = {"t"},
                                                      std::vector<std::string> odd = {});

  int nvars() const { return m + n; }
  int var_parity(int v) const { return v < m ? 0 : 1; }
  std::string var_name(int v) const { return v < m ? even_names[v] : odd_names[v - m]; }

  // packed monomials
  static constexpr int kBits = 10;
  static constexpr int kOffset = 512;
  uint64_t pack(const std::vector<int>& e, uint32_t mask) const;
  int exp(uint64_t key, int i) const { return (int)((key >> (kBits * i)) & 1023) - (laurent[i] ? kOffset : 0); }
  uint32_t mask(uint64_t key) const { return (uint32_t)(key >> 50); }
  uint64_t with_exp(uint64_t key, int i, int e) const;
  bool in_range(int i, int e) const;
  std::vector<uint64_t> monomials() const;  // all monomials, sorted
  uint64_t top() const;                     // tau(N) xi_1...xi_n (divided rings only)

  Scalar binom(int a, int b) const;  // C(a+b, a) in F
 private:
  mutable std::unordered_map<uint64_t, Scalar> binom_cache_;
};

using Ring = std::shared_ptr<const PolyRing>;

class Poly {
 public:
  Poly() = default;
  explicit Poly(Ring R) : R_(std::move(R)) {}
  static Poly constant(Ring R, const Scalar& c);
  static Poly monomial(Ring R, uint64_t key, const Scalar& c);
  static Poly var(Ring R, int v);  // u_v (divided power 1) or xi
  // u^(e) xi_S with e per even variable and S a list of odd indices (0-based, in order)
  static Poly mono(Ring R, const std::vector<int>& e, const std::vector<int>& odd = {}, Scalar c = Scalar());

  const Ring& ring() const { return R_; }
  const std::vector<std::pair<uint64_t, Scalar>>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int parity() const;  // -1 inhomogeneous; 0 for zero
  Scalar coeff(uint64_t key) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Scalar& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  bool operator==(const Poly& o) const;

  Poly derive(int v) const;  // distinguished (divided) or ordinary (Laurent) partial derivative; odd: left
  Scalar integral() const;   // coefficient of the top monomial
  Poly truncated_to(const Ring& R) const;  // re-embed in a ring with smaller bounds (drops overflowing terms)
  std::string str() const;

  void add_term(uint64_t key, const Scalar& c);  // unsorted-safe (keeps order)
 private:
  Ring R_;
  std::vector<std::pair<uint64_t, Scalar>> t_;
};

// product of one monomial pair; returns false if it vanishes
bool mono_mul(const PolyRing& R, uint64_t a, uint64_t b, uint64_t& out, Scalar& coef);

// multipliers for svect_h: 1, 1 + ubar, exp(u_i^(p^{N_i})) (in the ring with N_i enlarged by 1)
enum class DensityKind { One, OnePlusUbar, Exp };
struct Density {
  DensityKind kind = DensityKind::One;
  Ring ring;  // ring where h lives (enlarged for Exp)
  Poly h;
};
Density volume_density(const Ring& R, DensityKind kind, int index = 0);

}  // namespace nisforge
