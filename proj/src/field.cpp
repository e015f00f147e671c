#include "nisforge/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace nisforge {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long modp(long a, int p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inv_mod(long a, int p) {
  long t = 0, nt = 1, r = p, nr = modp(a, p);
  while (nr) {
    long qq = r / nr;
    std::swap(t, nt);
    nt -= qq * t;
    std::swap(r, nr);
    nr -= qq * r;
  }
  return modp(t, p);
}

// remainder of a mod b over GF(p)
Poly poly_rem(Poly a, const Poly& b, int p) {
  trim(a);
  int db = (int)b.size() - 1;
  long lc = inv_mod(b.back(), p);
  while ((int)a.size() - 1 >= db && !a.empty()) {
    int s = (int)a.size() - 1 - db;
    long c = modp(a.back() * lc, p);
    for (int i = 0; i <= db; ++i) a[s + i] = (int)modp(a[s + i] - c * b[i], p);
    trim(a);
  }
  return a;
}

// table entries known as Conway polynomials; the rest fall back to a deterministic search
const std::map<std::pair<int, int>, Poly>& conway_table() {
  static const std::map<std::pair<int, int>, Poly> t = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return t;
}

}  // namespace

bool poly_irreducible(const std::vector<int>& f0, int p) {
  Poly f = f0;
  for (auto& c : f) c = (int)modp(c, p);
  trim(f);
  int k = (int)f.size() - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  // trial division by monic polys of degree 1..k/2
  for (int d = 1; d <= k / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      long t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = (int)(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> default_modulus(int p, int k) {
  auto it = conway_table().find({p, k});
  if (it != conway_table().end()) return it->second;
  // smallest monic irreducible in base-p order of the low coefficients
  long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long idx = 1; idx < count; ++idx) {
    Poly g(k + 1);
    long t = idx;
    for (int i = 0; i < k; ++i) {
      g[i] = (int)(t % p);
      t /= p;
    }
    g[k] = 1;
    if (poly_irreducible(g, p)) return g;
  }
  throw std::runtime_error("no irreducible polynomial found");
}

// ---------------- FieldData arithmetic ----------------

uint32_t FieldData::add(uint32_t a, uint32_t b) const {
  if (k == 1) {
    uint32_t s = a + b;
    return s >= (uint32_t)p ? s - p : s;
  }
  if (p == 2) return a ^ b;
  uint32_t r = 0;
  for (int i = 0; i < k; ++i) {
    uint32_t da = (a / pw[i]) % p, db = (b / pw[i]) % p;
    uint32_t s = da + db;
    if (s >= (uint32_t)p) s -= p;
    r += s * pw[i];
  }
  return r;
}

uint32_t FieldData::neg(uint32_t a) const {
  if (k == 1) return a ? p - a : 0;
  if (p == 2) return a;
  uint32_t r = 0;
  for (int i = 0; i < k; ++i) {
    uint32_t d = (a / pw[i]) % p;
    r += (d ? p - d : 0) * pw[i];
  }
  return r;
}

uint32_t FieldData::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldData::polymul(uint32_t a, uint32_t b) const {
  std::vector<long> A(k), B(k), C(2 * k - 1, 0);
  for (int i = 0; i < k; ++i) {
    A[i] = (a / pw[i]) % p;
    B[i] = (b / pw[i]) % p;
  }
  for (int i = 0; i < k; ++i)
    if (A[i])
      for (int j = 0; j < k; ++j) C[i + j] = (C[i + j] + A[i] * B[j]) % p;
  for (int d = 2 * k - 2; d >= k; --d) {
    long c = C[d];
    if (!c) continue;
    C[d] = 0;
    for (int i = 0; i < k; ++i) C[d - k + i] = modp(C[d - k + i] - c * mod[i], p);
  }
  uint32_t r = 0;
  for (int i = 0; i < k; ++i) r += (uint32_t)C[i] * pw[i];
  return r;
}

uint32_t FieldData::mul(uint32_t a, uint32_t b) const {
  if (k == 1) return (uint32_t)((uint64_t)a * b % (uint64_t)p);
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) {
    uint32_t e = log_[a] + log_[b];
    if (e >= q - 1) e -= q - 1;
    return exp_[e];
  }
  return polymul(a, b);
}

uint32_t FieldData::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in " + std::to_string(p) + "^" + std::to_string(k));
  if (k == 1) return (uint32_t)inv_mod(a, p);
  if (!log_.empty()) return exp_[(q - 1 - log_[a]) % (q - 1)];
  // a^(q-2)
  uint32_t r = 1, b = a;
  uint64_t e = q - 2;
  while (e) {
    if (e & 1) r = polymul(r, b);
    b = polymul(b, b);
    e >>= 1;
  }
  return r;
}

// ---------------- Field ----------------

namespace {
std::mutex reg_mu;
std::map<std::pair<int, std::vector<int>>, std::unique_ptr<FieldData>>& registry() {
  static std::map<std::pair<int, std::vector<int>>, std::unique_ptr<FieldData>> r;
  return r;
}
}  // namespace

Field Field::Q() {
  std::lock_guard<std::mutex> g(reg_mu);
  auto& r = registry();
  auto key = std::make_pair(0, std::vector<int>{});
  auto it = r.find(key);
  if (it == r.end()) {
    auto d = std::make_unique<FieldData>();
    d->p = 0;
    d->k = 1;
    it = r.emplace(key, std::move(d)).first;
  }
  return Field(it->second.get());
}

Field Field::GF(int p, int k, std::vector<int> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1 || k > 8) throw std::invalid_argument("extension degree must be in 1..8");
  if (k == 1) {
    modulus = {0, 1};
  } else if (modulus.empty()) {
    modulus = default_modulus(p, k);
  } else {
    if ((int)modulus.size() != k + 1 || modp(modulus.back(), p) != 1)
      throw std::invalid_argument("modulus must be monic of degree k");
    for (auto& c : modulus) c = (int)modp(c, p);
    if (!poly_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible");
  }
  std::lock_guard<std::mutex> g(reg_mu);
  auto& r = registry();
  auto key = std::make_pair(p, modulus);
  auto it = r.find(key);
  if (it != r.end()) return Field(it->second.get());
  auto d = std::make_unique<FieldData>();
  d->p = p;
  d->k = k;
  d->mod = modulus;
  uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    d->pw.push_back((uint32_t)q);
    q *= p;
    if (q > (1ull << 31)) throw std::invalid_argument("field too large");
  }
  d->q = (uint32_t)q;
  if (k > 1 && q <= (1u << 22)) {
    // find a primitive element, then build log/exp tables
    for (uint32_t g = 2; g < q; ++g) {
      std::vector<uint32_t> ex(q - 1);
      uint32_t x = 1;
      bool ok = true;
      for (uint32_t i = 0; i < q - 1; ++i) {
        ex[i] = x;
        x = d->polymul(x, g);
        if (x == 1 && i + 1 < q - 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      d->exp_ = std::move(ex);
      d->log_.assign(q, 0);
      for (uint32_t i = 0; i < q - 1; ++i) d->log_[d->exp_[i]] = i;
      break;
    }
  }
  it = r.emplace(key, std::move(d)).first;
  return Field(it->second.get());
}

Field Field::make(const FieldSpec& s) {
  if (s.characteristic == 0) {
    if (s.extension_degree != 1) throw std::invalid_argument("characteristic 0 takes no extension");
    return Q();
  }
  return GF(s.characteristic, s.extension_degree, s.modulus);
}

FieldSpec Field::spec() const {
  FieldSpec s;
  s.characteristic = d_->p;
  s.extension_degree = d_->k;
  if (d_->k > 1) s.modulus = d_->mod;
  return s;
}

std::string Field::name() const {
  if (d_->p == 0) return "Q";
  if (d_->k == 1) return "GF(" + std::to_string(d_->p) + ")";
  return "GF(" + std::to_string(d_->p) + "^" + std::to_string(d_->k) + ")";
}

Scalar Field::zero() const {
  if (d_->p == 0) return Scalar(d_, mpq_class(0));
  return Scalar(d_, 0u);
}
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long n) const {
  if (d_->p == 0) return Scalar(d_, mpq_class(n));
  return Scalar(d_, (uint32_t)modp(n, d_->p));
}

Scalar Field::from_frac(long a, long b) const {
  if (b == 0) throw std::domain_error("zero denominator");
  if (d_->p == 0) {
    mpq_class q(a, b);
    q.canonicalize();
    return Scalar(d_, q);
  }
  return from_int(a) / from_int(b);
}

Scalar Field::from_mpq(const mpq_class& q) const {
  if (d_->p == 0) return Scalar(d_, q);
  mpz_class n = q.get_num() % d_->p, dd = q.get_den() % d_->p;
  return from_int(n.get_si()) / from_int(dd.get_si());
}

Scalar Field::from_index(uint32_t v) const {
  if (d_->p == 0) return from_int(v);
  if (v >= d_->q) throw std::out_of_range("element index");
  return Scalar(d_, v);
}

Scalar Field::generator() const {
  if (d_->k == 1) throw std::logic_error("prime field has no polynomial generator");
  return Scalar(d_, (uint32_t)d_->p);
}

std::vector<Scalar> Field::elements() const {
  if (d_->p == 0) throw std::logic_error("Q is infinite");
  std::vector<Scalar> out;
  out.reserve(d_->q);
  for (uint32_t v = 0; v < d_->q; ++v) out.emplace_back(d_, v);
  return out;
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (d_->p == 0) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    return from_frac(num(rng), den(rng));
  }
  std::uniform_int_distribution<uint32_t> u(0, d_->q - 1);
  return Scalar(d_, u(rng));
}

Scalar Field::parse(const std::string& s0) const {
  std::string s;
  for (char c : s0)
    if (!isspace((unsigned char)c)) s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (d_->p == 0) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s0 + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s0 + "'");
    q.canonicalize();
    return Scalar(d_, q);
  }
  // sum of terms c, c*x, cx^e, x^e with optional sign
  Scalar acc = zero();
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string t = s.substr(i, j - i);
    i = j;
    if (t.empty()) throw std::invalid_argument("bad scalar '" + s0 + "'");
    long coef = 1;
    long e = 0;
    size_t xp = t.find('x');
    if (xp == std::string::npos) {
      coef = std::stol(t);
    } else {
      std::string c = t.substr(0, xp);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coef = std::stol(c);
      e = 1;
      if (xp + 1 < t.size()) {
        if (t[xp + 1] != '^') throw std::invalid_argument("bad scalar '" + s0 + "'");
        e = std::stol(t.substr(xp + 2));
      }
      if (d_->k == 1) throw std::invalid_argument("prime field element with x: '" + s0 + "'");
    }
    Scalar term = from_int(sign * coef);
    if (e) term = term * generator().pow(e);
    acc = acc + term;
  }
  return acc;
}

// ---------------- Scalar ----------------

Field Scalar::field() const {
  if (!f_) throw std::logic_error("field-less scalar");
  return Field(f_);
}

bool Scalar::is_one() const {
  if (!f_) return false;
  if (f_->p == 0) return q_ && *q_ == 1;
  return v_ == 1;
}

namespace {
const FieldData* pick(const FieldData* a, const FieldData* b) {
  if (a && b && a != b) throw std::logic_error("mixing scalars of different fields");
  return a ? a : b;
}
const mpq_class& qv(const std::unique_ptr<mpq_class>& p) {
  static const mpq_class z(0);
  return p ? *p : z;
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  const FieldData* f = pick(f_, o.f_);
  if (!f) return Scalar();
  if (f->p == 0) return Scalar(f, mpq_class(qv(q_) + qv(o.q_)));
  return Scalar(f, f->add(v_, o.v_));
}
Scalar Scalar::operator-(const Scalar& o) const {
  const FieldData* f = pick(f_, o.f_);
  if (!f) return Scalar();
  if (f->p == 0) return Scalar(f, mpq_class(qv(q_) - qv(o.q_)));
  return Scalar(f, f->sub(v_, o.v_));
}
Scalar Scalar::operator*(const Scalar& o) const {
  const FieldData* f = pick(f_, o.f_);
  if (!f) return Scalar();
  if (f->p == 0) return Scalar(f, mpq_class(qv(q_) * qv(o.q_)));
  return Scalar(f, f->mul(v_, o.v_));
}
Scalar Scalar::inv() const {
  if (!f_ || is_zero()) throw std::domain_error("inverse of zero");
  if (f_->p == 0) return Scalar(f_, mpq_class(1 / *q_));
  return Scalar(f_, f_->inv(v_));
}
Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }
Scalar Scalar::operator-() const {
  if (!f_) return Scalar();
  if (f_->p == 0) return Scalar(f_, mpq_class(-qv(q_)));
  return Scalar(f_, f_->neg(v_));
}
Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  if (!f_) throw std::logic_error("field-less scalar");
  Scalar r = f_->p == 0 ? Scalar(f_, mpq_class(1)) : Scalar(f_, 1u);
  Scalar b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}
bool Scalar::operator==(const Scalar& o) const {
  if (!f_ || !o.f_) return is_zero() && o.is_zero();
  if (f_ != o.f_) return false;
  if (f_->p == 0) return qv(q_) == qv(o.q_);
  return v_ == o.v_;
}

std::string Scalar::str() const {
  if (!f_) return "0";
  if (f_->p == 0) return qv(q_).get_str();
  if (f_->k == 1) return std::to_string(v_);
  if (v_ == 0) return "0";
  std::string out;
  for (int i = f_->k - 1; i >= 0; --i) {
    uint32_t c = (v_ / f_->pw[i]) % f_->p;
    if (!c) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace nisforge
