#include "adelab/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "adelab/factor.hpp"

namespace adelab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 invm(u64 a, u64 p) {
  // extended Euclid in F_p
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw DomainError("Fq: inverse of zero");
  return static_cast<u64>(t < 0 ? t + static_cast<long long>(p) : t);
}

// Polynomials over F_p as bare coefficient vectors; only used while
// searching for a defining polynomial.
using PVec = std::vector<u64>;

void pnorm(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& mod, u64 p) {
  if (a.empty() || b.empty()) return {};
  PVec prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = addm(prod[i + j], mulm(a[i], b[j], p), p);
    }
  }
  // reduce by monic mod
  std::size_t d = mod.size() - 1;
  for (std::size_t i = prod.size(); i-- > d;) {
    u64 c = prod[i];
    if (!c) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < d; ++j) {
      prod[i - d + j] = subm(prod[i - d + j], mulm(c, mod[j], p), p);
    }
  }
  prod.resize(d);
  pnorm(prod);
  return prod;
}

PVec ppowmod(PVec base, Int e, const PVec& mod, u64 p) {
  PVec r = {1};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmulmod(r, base, mod, p);
    base = pmulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

PVec pgcd(PVec a, PVec b, u64 p) {
  pnorm(a);
  pnorm(b);
  while (!b.empty()) {
    // a mod b
    u64 lb = invm(b.back(), p);
    while (a.size() >= b.size()) {
      u64 c = mulm(a.back(), lb, p);
      if (c) {
        std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
          a[off + j] = subm(a[off + j], mulm(c, b[j], p), p);
        }
      }
      pnorm(a);
      if (a.size() < b.size()) break;
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool p_is_irreducible(const PVec& f, u64 p) {
  // f monic of degree e >= 2: x^(p^e) == x mod f and gcd(x^(p^(e/l)) - x, f) = 1
  std::size_t e = f.size() - 1;
  PVec x = {0, 1};
  Int pe = 1;
  for (std::size_t i = 0; i < e; ++i) pe *= static_cast<unsigned long>(p);
  PVec xe = ppowmod(x, pe, f, p);
  if (xe != x) return false;
  std::size_t m = e;
  for (std::size_t l = 2; l * l <= m; ++l) {
    if (m % l) continue;
    while (m % l == 0) m /= l;
    Int pk = 1;
    for (std::size_t i = 0; i < e / l; ++i) pk *= static_cast<unsigned long>(p);
    PVec g = ppowmod(x, pk, f, p);
    // g - x
    PVec diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = subm(diff[1], 1, p);
    pnorm(diff);
    PVec gg = pgcd(diff, f, p);
    if (gg.size() != 1) return false;
  }
  if (m > 1) {
    Int pk = 1;
    for (std::size_t i = 0; i < e / m; ++i) pk *= static_cast<unsigned long>(p);
    PVec g = ppowmod(x, pk, f, p);
    PVec diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = subm(diff[1], 1, p);
    pnorm(diff);
    PVec gg = pgcd(diff, f, p);
    if (gg.size() != 1) return false;
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree e over F_p,
// scanning constant term upward.
std::vector<u64> find_defining(u64 p, int e) {
  std::vector<u64> low(static_cast<std::size_t>(e), 0);
  while (true) {
    PVec f = low;
    f.push_back(1);
    if (f[0] != 0 && p_is_irreducible(f, p)) return low;
    // increment low as a base-p counter
    int i = 0;
    while (i < e) {
      if (++low[static_cast<std::size_t>(i)] < p) break;
      low[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == e) throw DomainError("FqContext: no irreducible found");
  }
}

}  // namespace

FqContext::FqContext(u64 p, int e, std::vector<u64> defining)
    : p_(p), e_(e), defining_(std::move(defining)) {
  q_ = 1;
  for (int i = 0; i < e_; ++i) {
    if (q_ > UINT64_MAX / p) throw DomainError("FqContext: q overflows 64 bits");
    q_ *= p;
  }
}

std::shared_ptr<const FqContext> FqContext::get(u64 p, int e) {
  if (e < 1) throw DomainError("FqContext: extension degree must be positive");
  if (p < 2 || !is_prime_u64(p)) throw DomainError("FqContext: p must be prime");
  static std::mutex mu;
  static std::map<std::pair<u64, int>, std::shared_ptr<const FqContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<u64> def;
  if (e > 1) def = find_defining(p, e);
  auto ctx = std::make_shared<const FqContext>(p, e, std::move(def));
  cache.emplace(key, ctx);
  return ctx;
}

std::string FqContext::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (e_ > 1) os << "^" << e_;
  os << ")";
  return os.str();
}

Fq::Fq(std::shared_ptr<const FqContext> ctx, u64 scalar) : ctx_(std::move(ctx)) {
  c_.assign(static_cast<std::size_t>(ctx_->e()), 0);
  c_[0] = scalar % ctx_->p();
}

Fq::Fq(std::shared_ptr<const FqContext> ctx, std::vector<u64> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  c_.resize(static_cast<std::size_t>(ctx_->e()), 0);
  for (auto& v : c_) v %= ctx_->p();
}

Fq Fq::gen(std::shared_ptr<const FqContext> ctx) {
  if (ctx->e() == 1) return Fq(ctx, 1);
  std::vector<u64> c(static_cast<std::size_t>(ctx->e()), 0);
  c[1] = 1;
  return Fq(std::move(ctx), std::move(c));
}

bool Fq::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool Fq::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

Fq Fq::operator+(const Fq& o) const {
  Fq r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = addm(c_[i], o.c_[i], ctx_->p());
  return r;
}

Fq Fq::operator-(const Fq& o) const {
  Fq r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = subm(c_[i], o.c_[i], ctx_->p());
  return r;
}

Fq Fq::operator-() const {
  Fq r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] ? ctx_->p() - c_[i] : 0;
  return r;
}

Fq Fq::operator*(const Fq& o) const {
  const u64 p = ctx_->p();
  const int e = ctx_->e();
  if (e == 1) {
    Fq r = *this;
    r.c_[0] = mulm(c_[0], o.c_[0], p);
    return r;
  }
  std::vector<u64> prod(static_cast<std::size_t>(2 * e - 1), 0);
  for (int i = 0; i < e; ++i) {
    if (!c_[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < e; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = addm(slot, mulm(c_[static_cast<std::size_t>(i)], o.c_[static_cast<std::size_t>(j)], p), p);
    }
  }
  const auto& def = ctx_->defining();
  for (int i = 2 * e - 2; i >= e; --i) {
    u64 cc = prod[static_cast<std::size_t>(i)];
    if (!cc) continue;
    prod[static_cast<std::size_t>(i)] = 0;
    for (int j = 0; j < e; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i - e + j)];
      slot = subm(slot, mulm(cc, def[static_cast<std::size_t>(j)], p), p);
    }
  }
  prod.resize(static_cast<std::size_t>(e));
  Fq r = *this;
  r.c_ = std::move(prod);
  return r;
}

bool Fq::operator==(const Fq& o) const { return c_ == o.c_; }

Fq Fq::pow(const Int& n_in) const {
  Int n = n_in;
  if (n < 0) return inverse().pow(-n);
  Fq base = *this;
  Fq r = Fq::one(ctx_);
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Fq Fq::inverse() const {
  if (is_zero()) throw DomainError("Fq: inverse of zero");
  if (ctx_->e() == 1) {
    Fq r = *this;
    r.c_[0] = invm(c_[0], ctx_->p());
    return r;
  }
  // a^(q-2)
  return pow(Int(static_cast<unsigned long>(ctx_->q())) - 2);
}

Fq Fq::frobenius(int k) const {
  Fq r = *this;
  Int pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<unsigned long>(ctx_->p());
  return pow(pk);
}

std::string Fq::to_string() const {
  if (ctx_->e() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ".";
    os << c_[i];
  }
  os << "]";
  return os.str();
}

std::uint64_t Fq::hash_key() const {
  u64 h = 0xcbf29ce484222325ULL;
  for (u64 v : c_) {
    h ^= v + 1;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace adelab
