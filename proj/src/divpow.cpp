#include "nisforge/divpow.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace nisforge {

namespace {

std::vector<std::string> default_names(const std::string& base, int k, std::vector<std::string> given) {
  if (!given.empty()) {
    if ((int)given.size() != k) throw std::invalid_argument("variable name count mismatch");
    return given;
  }
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(base + std::to_string(i + 1));
  return out;
}

std::shared_ptr<PolyRing> make_ring(const Field& F, int m, int n) {
  if (m > 5) throw std::invalid_argument("at most 5 even variables");
  if (n > 14) throw std::invalid_argument("at most 14 odd variables");
  auto R = std::make_shared<PolyRing>();
  R->F = F;
  R->m = m;
  R->n = n;
  return R;
}

}  // namespace

std::shared_ptr<const PolyRing> PolyRing::divided(const Field& F, std::vector<int> N, int n_odd,
                                                  std::vector<std::string> even, std::vector<std::string> odd) {
  int p = F.characteristic();
  if (p == 0) throw std::invalid_argument("divided powers with finite shearing need characteristic p");
  auto R = make_ring(F, (int)N.size(), n_odd);
  for (int Ni : N) {
    if (Ni < 1) throw std::invalid_argument("shearing entries must be positive");
    long b = 1;
    for (int k = 0; k < Ni; ++k) b *= p;
    if (b > 1023) throw std::invalid_argument("shearing too large");
    R->bound.push_back((int)b);
    R->laurent.push_back(false);
  }
  R->N = N;
  R->even_names = default_names("u", R->m, even);
  R->odd_names = default_names("xi", n_odd, odd);
  return R;
}

std::shared_ptr<const PolyRing> PolyRing::polynomial(const Field& F, int m, int cap, int n_odd,
                                                     std::vector<std::string> even, std::vector<std::string> odd) {
  if (F.characteristic() != 0 && m > 0) throw std::invalid_argument("truncated polynomial rings are for characteristic 0");
  auto R = make_ring(F, m, n_odd);
  R->bound.assign(m, cap + 1);
  R->laurent.assign(m, false);
  R->N.assign(m, 0);
  R->even_names = default_names("u", m, even);
  R->odd_names = default_names("xi", n_odd, odd);
  return R;
}

std::shared_ptr<const PolyRing> PolyRing::laurent_ring(const Field& F, int window, int n_odd,
                                                       std::vector<std::string> even, std::vector<std::string> odd) {
  if (F.characteristic() != 0) throw std::invalid_argument("Laurent rings are for characteristic 0");
  if (window < 0 || window > 500) throw std::invalid_argument("window out of range");
  auto R = make_ring(F, (int)even.size(), n_odd);
  R->bound.assign(R->m, window);
  R->laurent.assign(R->m, true);
  R->N.assign(R->m, 0);
  R->even_names = even;
  R->odd_names = default_names("theta", n_odd, odd);
  return R;
}

bool PolyRing::in_range(int i, int e) const {
  if (laurent[i]) return e >= -bound[i] && e <= bound[i];
  return e >= 0 && e < bound[i];
}

uint64_t PolyRing::pack(const std::vector<int>& e, uint32_t msk) const {
  uint64_t k = (uint64_t)msk << 50;
  for (int i = 0; i < m; ++i) k |= (uint64_t)(e[i] + (laurent[i] ? kOffset : 0)) << (kBits * i);
  return k;
}

uint64_t PolyRing::with_exp(uint64_t key, int i, int e) const {
  uint64_t clear = ~((uint64_t)1023 << (kBits * i));
  return (key & clear) | ((uint64_t)(e + (laurent[i] ? kOffset : 0)) << (kBits * i));
}

std::vector<uint64_t> PolyRing::monomials() const {
  std::vector<uint64_t> out;
  std::vector<int> e(m);
  for (int i = 0; i < m; ++i) e[i] = laurent[i] ? -bound[i] : 0;
  while (true) {
    for (uint32_t s = 0; s < (1u << n); ++s) out.push_back(pack(e, s));
    int i = 0;
    for (; i < m; ++i) {
      int hi = laurent[i] ? bound[i] : bound[i] - 1;
      if (e[i] < hi) {
        ++e[i];
        break;
      }
      e[i] = laurent[i] ? -bound[i] : 0;
    }
    if (i == m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t PolyRing::top() const {
  std::vector<int> e(m);
  for (int i = 0; i < m; ++i) {
    if (laurent[i]) throw std::logic_error("no top monomial in a Laurent ring");
    e[i] = bound[i] - 1;
  }
  return pack(e, n ? (uint32_t)((1u << n) - 1) : 0u);
}

Scalar PolyRing::binom(int a, int b) const {
  uint64_t key = ((uint64_t)a << 32) | (uint32_t)b;
  auto it = binom_cache_.find(key);
  if (it != binom_cache_.end()) return it->second;
  Scalar r;
  int p = F.characteristic();
  if (p) {
    // Lucas: C(a+b, a) digitwise
    long n = a + b, k = a, c = 1;
    while (n || k) {
      long nd = n % p, kd = k % p;
      if (kd > nd) {
        c = 0;
        break;
      }
      long bc = 1;
      for (long t = 0; t < kd; ++t) bc = bc * (nd - t) / (t + 1);
      c = c * (bc % p) % p;
      n /= p;
      k /= p;
    }
    r = F.from_int(c);
  } else {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), (unsigned long)(a + b), (unsigned long)a);
    r = F.from_mpq(mpq_class(z));
  }
  binom_cache_.emplace(key, r);
  return r;
}

bool mono_mul(const PolyRing& R, uint64_t a, uint64_t b, uint64_t& out, Scalar& coef) {
  uint32_t ma = R.mask(a), mb = R.mask(b);
  if (ma & mb) return false;
  coef = R.F.one();
  std::vector<int> e(R.m);
  for (int i = 0; i < R.m; ++i) {
    int x = R.exp(a, i), y = R.exp(b, i);
    int s = x + y;
    if (!R.in_range(i, s)) return false;
    e[i] = s;
    if (!R.laurent[i]) {
      Scalar c = R.binom(x, y);
      if (c.is_zero()) return false;
      if (!c.is_one()) coef *= c;
    }
  }
  int swaps = 0;
  for (uint32_t t = mb; t; t &= t - 1) {
    int j = std::countr_zero(t);
    swaps += std::popcount(ma >> (j + 1));
  }
  if (swaps & 1) coef = -coef;
  out = R.pack(e, ma | mb);
  return true;
}

Poly Poly::constant(Ring R, const Scalar& c) {
  Poly p(R);
  if (!c.is_zero()) p.t_.emplace_back(R->pack(std::vector<int>(R->m, 0), 0), c);
  return p;
}

Poly Poly::monomial(Ring R, uint64_t key, const Scalar& c) {
  Poly p(R);
  if (!c.is_zero()) p.t_.emplace_back(key, c);
  return p;
}

Poly Poly::var(Ring R, int v) {
  std::vector<int> e(R->m, 0);
  uint32_t s = 0;
  if (v < R->m) e[v] = 1;
  else s = 1u << (v - R->m);
  return monomial(R, R->pack(e, s), R->F.one());
}

Poly Poly::mono(Ring R, const std::vector<int>& e, const std::vector<int>& odd, Scalar c) {
  if (!c.fd()) c = R->F.one();
  for (int i = 0; i < R->m; ++i)
    if (!R->in_range(i, e[i])) return Poly(R);
  Poly p = monomial(R, R->pack(e, 0), c);
  for (int j : odd) p = p * var(R, R->m + j);
  return p;
}

int Poly::parity() const {
  if (t_.empty()) return 0;
  int p = std::popcount(R_->mask(t_[0].first)) & 1;
  for (auto& [k, c] : t_)
    if ((std::popcount(R_->mask(k)) & 1) != p) return -1;
  return p;
}

Scalar Poly::coeff(uint64_t key) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), key, [](const auto& a, uint64_t k) { return a.first < k; });
  if (it != t_.end() && it->first == key) return it->second;
  return R_ ? R_->F.zero() : Scalar();
}

void Poly::add_term(uint64_t key, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), key, [](const auto& a, uint64_t k) { return a.first < k; });
  if (it != t_.end() && it->first == key) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  } else {
    t_.insert(it, {key, c});
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (!R_) return o;
  if (!o.R_) return *this;
  Poly r(R_);
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) r.t_.push_back(t_[i++]);
    else if (i == t_.size() || o.t_[j].first < t_[i].first) r.t_.push_back(o.t_[j++]);
    else {
      Scalar s = t_[i].second + o.t_[j].second;
      if (!s.is_zero()) r.t_.emplace_back(t_[i].first, s);
      ++i, ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Scalar& c) const {
  Poly r(R_);
  if (c.is_zero()) return r;
  r.t_ = t_;
  for (auto& [k, x] : r.t_) x *= c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (!R_ || !o.R_) return Poly(R_ ? R_ : o.R_);
  std::unordered_map<uint64_t, Scalar> acc;
  for (auto& [a, x] : t_)
    for (auto& [b, y] : o.t_) {
      uint64_t k;
      Scalar c;
      if (!mono_mul(*R_, a, b, k, c)) continue;
      acc[k] += c * x * y;
    }
  Poly r(R_);
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.t_.emplace_back(k, c);
  std::sort(r.t_.begin(), r.t_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].first != o.t_[i].first || !(t_[i].second == o.t_[i].second)) return false;
  return true;
}

Poly Poly::derive(int v) const {
  Poly r(R_);
  if (!R_) return r;
  if (v < R_->m) {
    for (auto& [k, c] : t_) {
      int e = R_->exp(k, v);
      if (R_->laurent[v]) {
        if (e == 0 || !R_->in_range(v, e - 1)) continue;
        r.t_.emplace_back(R_->with_exp(k, v, e - 1), c * R_->F.from_int(e));
      } else if (e > 0) {
        r.t_.emplace_back(R_->with_exp(k, v, e - 1), c);
      }
    }
  } else {
    int j = v - R_->m;
    for (auto& [k, c] : t_) {
      uint32_t s = R_->mask(k);
      if (!(s >> j & 1)) continue;
      int before = std::popcount(s & ((1u << j) - 1));
      uint64_t nk = (k & ~((uint64_t)1 << (50 + j)));
      r.t_.emplace_back(nk, before & 1 ? -c : c);
    }
  }
  std::sort(r.t_.begin(), r.t_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

Scalar Poly::integral() const { return coeff(R_->top()); }

Poly Poly::truncated_to(const Ring& R) const {
  Poly r(R);
  for (auto& [k, c] : t_) {
    bool ok = true;
    std::vector<int> e(R->m);
    for (int i = 0; i < R->m; ++i) {
      e[i] = R_->exp(k, i);
      ok &= R->in_range(i, e[i]);
    }
    if (ok) r.t_.emplace_back(R->pack(e, R_->mask(k)), c);
  }
  std::sort(r.t_.begin(), r.t_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : t_) {
    std::vector<std::string> f;
    for (int i = 0; i < R_->m; ++i) {
      int e = R_->exp(k, i);
      if (e == 0) continue;
      std::string v = R_->even_names[i];
      if (R_->laurent[i]) f.push_back(e == 1 ? v : v + "^" + std::to_string(e));
      else f.push_back(e == 1 ? v : v + "^(" + std::to_string(e) + ")");
    }
    uint32_t s = R_->mask(k);
    for (int j = 0; j < R_->n; ++j)
      if (s >> j & 1) f.push_back(R_->odd_names[j]);
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (neg) cs = cs.substr(1);
    bool unit = cs == "1";
    if (!unit || f.empty()) {
      bool compound = cs.find_first_of("+-") != std::string::npos;
      os << (compound ? "(" + cs + ")" : cs);
      if (!f.empty()) os << " ";
    }
    for (size_t t = 0; t < f.size(); ++t) os << (t ? " " : "") << f[t];
    first = false;
  }
  return os.str();
}

Density volume_density(const Ring& R, DensityKind kind, int index) {
  Density d;
  d.kind = kind;
  const Field& F = R->F;
  if (kind == DensityKind::One) {
    d.ring = R;
    d.h = Poly::constant(R, F.one());
    return d;
  }
  if (kind == DensityKind::OnePlusUbar) {
    d.ring = R;
    std::vector<int> e(R->m);
    for (int i = 0; i < R->m; ++i) e[i] = R->bound[i] - 1;
    d.h = Poly::constant(R, F.one()) + Poly::mono(R, e);
    return d;
  }
  int p = F.characteristic();
  if (p == 0) throw std::invalid_argument("exp density needs characteristic p");
  if (index < 0 || index >= R->m) throw std::invalid_argument("exp density index out of range");
  std::vector<int> N2 = R->N;
  N2[index] += 1;
  d.ring = PolyRing::divided(F, N2, R->n, R->even_names, R->odd_names);
  int a = R->bound[index];
  Poly h(d.ring);
  for (int j = 0; j * a < d.ring->bound[index]; ++j) {
    // (u^(a))^(j) = (ja)! / (j! (a!)^j) u^(ja)
    mpz_class num, den, fa, fj;
    mpz_fac_ui(num.get_mpz_t(), (unsigned long)(j * a));
    mpz_fac_ui(fa.get_mpz_t(), (unsigned long)a);
    mpz_fac_ui(fj.get_mpz_t(), (unsigned long)j);
    mpz_pow_ui(den.get_mpz_t(), fa.get_mpz_t(), (unsigned long)j);
    den *= fj;
    mpz_class c = num / den;
    std::vector<int> e(R->m, 0);
    e[index] = j * a;
    h += Poly::mono(d.ring, e, {}, F.from_mpq(mpq_class(c)));
  }
  d.h = h;
  return d;
}

}  // namespace nisforge
