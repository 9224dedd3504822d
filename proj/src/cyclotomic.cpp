#include "adelab/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "adelab/factor.hpp"

namespace adelab {

namespace {

// exact division of integer polynomials, divisor monic
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  if (num.size() < den.size()) return {};
  std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
  for (std::size_t i = num.size(); i-- > 0;) {
    if (i + 1 < den.size()) break;
    Int c = num[i];
    if (c == 0) continue;
    std::size_t off = i - (den.size() - 1);
    quot[off] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[off + j] -= c * den[j];
  }
  return quot;
}

std::vector<Int> cyclotomic_poly(long n, std::map<long, std::vector<Int>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n
  std::vector<Int> num(static_cast<std::size_t>(n) + 1, Int(0));
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_div_exact(std::move(num), cyclotomic_poly(d, cache));
    while (!num.empty() && num.back() == 0) num.pop_back();
  }
  cache[n] = num;
  return num;
}

}  // namespace

CyclotomicContext::CyclotomicContext(long n, long phi, std::vector<Int> phi_poly)
    : n_(n), phi_(phi), phi_poly_(std::move(phi_poly)) {
  // zeta^j is a basis vector for j < phi; only the tail rows j in [phi, N)
  // are stored, built by repeated shift-and-reduce from zeta^(phi-1)
  tail_rows_.reserve(static_cast<std::size_t>(n - phi_));
  std::vector<Int> cur(static_cast<std::size_t>(phi_), Int(0));
  cur.back() = 1;  // zeta^(phi-1)
  for (long j = phi_; j < n; ++j) {
    std::vector<Int> next(static_cast<std::size_t>(phi_), Int(0));
    Int lead = cur.back();
    for (long i = phi_ - 1; i >= 1; --i) {
      next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    }
    next[0] = 0;
    if (lead != 0) {
      // subtract lead * (Phi_N - x^phi)
      for (long i = 0; i < phi_; ++i) {
        next[static_cast<std::size_t>(i)] -= lead * phi_poly_[static_cast<std::size_t>(i)];
      }
    }
    tail_rows_.push_back(next);
    cur = std::move(next);
  }
  units_ = unit_group_mod(n);
}

void CyclotomicContext::accumulate_zeta_power(long j, const Rat& scale,
                                              std::vector<Rat>& acc) const {
  long r = j % n_;
  if (r < 0) r += n_;
  if (r < phi_) {
    acc[static_cast<std::size_t>(r)] += scale;
    return;
  }
  const auto& row = tail_rows_[static_cast<std::size_t>(r - phi_)];
  for (long i = 0; i < phi_; ++i) {
    if (row[static_cast<std::size_t>(i)] != 0) {
      acc[static_cast<std::size_t>(i)] += scale * Rat(row[static_cast<std::size_t>(i)]);
    }
  }
}

std::vector<Int> CyclotomicContext::zeta_power_dense(long j) const {
  long r = j % n_;
  if (r < 0) r += n_;
  std::vector<Int> out(static_cast<std::size_t>(phi_), Int(0));
  if (r < phi_) {
    out[static_cast<std::size_t>(r)] = 1;
  } else {
    out = tail_rows_[static_cast<std::size_t>(r - phi_)];
  }
  return out;
}

std::shared_ptr<const CyclotomicContext> CyclotomicContext::get(long n) {
  if (n < 1) throw DomainError("CyclotomicContext: conductor must be positive");
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CyclotomicContext>> reg;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = reg.find(n);
    if (it != reg.end()) return it->second;
  }
  // build outside the lock; a racing duplicate is discarded below
  std::map<long, std::vector<Int>> local_cache;
  auto phi_poly = cyclotomic_poly(n, local_cache);
  auto ctx = std::make_shared<const CyclotomicContext>(n, euler_phi(n), std::move(phi_poly));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = reg.emplace(n, ctx);
  return it->second;
}

CyclotomicElement::CyclotomicElement(std::shared_ptr<const CyclotomicContext> ctx)
    : ctx_(std::move(ctx)), c_(static_cast<std::size_t>(ctx_->degree())) {}

CyclotomicElement::CyclotomicElement(std::shared_ptr<const CyclotomicContext> ctx,
                                     std::vector<Rat> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  c_.resize(static_cast<std::size_t>(ctx_->degree()));
  for (auto& x : c_) x.canonicalize();
}

CyclotomicElement CyclotomicElement::zero(std::shared_ptr<const CyclotomicContext> ctx) {
  return CyclotomicElement(std::move(ctx));
}

CyclotomicElement CyclotomicElement::one(std::shared_ptr<const CyclotomicContext> ctx) {
  CyclotomicElement x(std::move(ctx));
  x.c_[0] = 1;
  return x;
}

CyclotomicElement CyclotomicElement::from_rational(std::shared_ptr<const CyclotomicContext> ctx,
                                                   Rat r) {
  CyclotomicElement x(std::move(ctx));
  r.canonicalize();
  x.c_[0] = std::move(r);
  return x;
}

CyclotomicElement CyclotomicElement::root_of_unity(std::shared_ptr<const CyclotomicContext> ctx,
                                                   long j) {
  CyclotomicElement x(ctx);
  ctx->accumulate_zeta_power(j, Rat(1), x.c_);
  return x;
}

bool CyclotomicElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool CyclotomicElement::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.get_den() == 1; });
}

bool CyclotomicElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return r == 0; });
}

Rat CyclotomicElement::rational_part() const { return c_[0]; }

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
  CyclotomicElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
  CyclotomicElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicElement CyclotomicElement::operator-() const {
  CyclotomicElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicElement CyclotomicElement::scaled(const Rat& s) const {
  CyclotomicElement r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
  const long phi = ctx_->degree();
  // convolution, then exponent-wise reduction via the zeta power table
  std::vector<Rat> conv(static_cast<std::size_t>(2 * phi - 1));
  for (long i = 0; i < phi; ++i) {
    const Rat& a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (long j = 0; j < phi; ++j) {
      const Rat& b = o.c_[static_cast<std::size_t>(j)];
      if (b == 0) continue;
      conv[static_cast<std::size_t>(i + j)] += a * b;
    }
  }
  CyclotomicElement r(ctx_);
  for (long e = 0; e < 2 * phi - 1; ++e) {
    const Rat& v = conv[static_cast<std::size_t>(e)];
    if (v == 0) continue;
    ctx_->accumulate_zeta_power(e, v, r.c_);
  }
  return r;
}

CyclotomicElement CyclotomicElement::conjugate(long k) const {
  const long n = ctx_->conductor();
  if (std::gcd(((k % n) + n) % n == 0 ? n : ((k % n) + n) % n, n) != 1) {
    throw DomainError("CyclotomicElement: conjugation exponent not coprime to conductor");
  }
  CyclotomicElement r(ctx_);
  const long phi = ctx_->degree();
  for (long i = 0; i < phi; ++i) {
    const Rat& v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    long e = (i * (((k % n) + n) % n)) % n;
    ctx_->accumulate_zeta_power(e, v, r.c_);
  }
  return r;
}

std::complex<double> CyclotomicElement::embed(long k) const {
  const long n = ctx_->conductor();
  long kk = ((k % n) + n) % n;
  if (n > 1 && std::gcd(kk, n) != 1) {
    throw DomainError("CyclotomicElement: embedding exponent not coprime to conductor");
  }
  std::complex<double> s(0.0, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    double angle = 2.0 * M_PI * static_cast<double>((static_cast<long>(i) * kk) % n) /
                   static_cast<double>(n);
    s += c_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return s;
}

CyclotomicElement CyclotomicElement::inverse() const {
  if (is_zero()) throw DomainError("CyclotomicElement: inverse of zero");
  if (is_rational()) {
    CyclotomicElement r(ctx_);
    r.c_[0] = Rat(1) / c_[0];
    return r;
  }
  // extended Euclid in Q[x] against Phi_N
  const long phi = ctx_->degree();
  std::vector<Rat> a(c_.begin(), c_.end());
  while (!a.empty() && a.back() == 0) a.pop_back();
  std::vector<Rat> b;
  b.reserve(static_cast<std::size_t>(phi) + 1);
  for (const auto& z : ctx_->cyclotomic_polynomial()) b.emplace_back(z);

  // invariants: s * x = a (mod Phi), t * x = b (mod Phi)
  std::vector<Rat> s = {Rat(1)}, t;
  auto poly_trim = [](std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto poly_sub_scaled = [](std::vector<Rat>& p, const std::vector<Rat>& q, const Rat& f,
                            std::size_t shift) {
    if (p.size() < q.size() + shift) p.resize(q.size() + shift);
    for (std::size_t i = 0; i < q.size(); ++i) p[i + shift] -= f * q[i];
  };
  while (!b.empty()) {
    // divide a by b
    std::vector<Rat> q;
    std::vector<Rat> r = a;
    poly_trim(r);
    if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, Rat(0));
    while (r.size() >= b.size() && !r.empty()) {
      Rat f = r.back() / b.back();
      std::size_t shift = r.size() - b.size();
      q[shift] = f;
      poly_sub_scaled(r, b, f, shift);
      poly_trim(r);
    }
    // (a, b) <- (b, r); (s, t) <- (t, s - q t)
    std::vector<Rat> new_s = s;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      poly_sub_scaled(new_s, t, q[i], i);
    }
    poly_trim(new_s);
    a = b;
    b = r;
    s = t;
    t = new_s;
  }
  // a is now the gcd (a nonzero constant, since Phi_N is irreducible)
  if (a.size() != 1) throw DomainError("CyclotomicElement: inverse failed (non-unit gcd)");
  Rat lead = a[0];
  std::vector<Rat> inv(static_cast<std::size_t>(phi));
  for (std::size_t i = 0; i < s.size() && i < inv.size(); ++i) inv[i] = s[i] / lead;
  return CyclotomicElement(ctx_, std::move(inv));
}

CyclotomicElement CyclotomicElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CyclotomicElement base = *this;
  CyclotomicElement r = CyclotomicElement::one(ctx_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool CyclotomicElement::is_root_of_unity(long* j_out, int* sign_out) const {
  const long n = ctx_->conductor();
  const long phi = ctx_->degree();
  // basis rows first: +-zeta^j for j < phi is a signed unit vector
  long support = -1;
  bool single = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (support >= 0 || (c_[i] != 1 && c_[i] != -1)) {
      single = false;
      break;
    }
    support = static_cast<long>(i);
  }
  if (single && support >= 0) {
    if (j_out) *j_out = support;
    if (sign_out) *sign_out = c_[static_cast<std::size_t>(support)] == 1 ? 1 : -1;
    return true;
  }
  for (long j = phi; j < n; ++j) {
    auto row = ctx_->zeta_power_dense(j);
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] != Rat(row[i])) plus = false;
      if (c_[i] != Rat(-row[i])) minus = false;
      if (!plus && !minus) break;
    }
    if (plus || minus) {
      if (j_out) *j_out = j;
      if (sign_out) *sign_out = plus ? 1 : -1;
      return true;
    }
  }
  return false;
}

std::string CyclotomicElement::key() const {
  // sparse lossless serialization
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    os << i << ":" << c_[i].get_num().get_str() << "/" << c_[i].get_den().get_str() << ",";
  }
  return os.str();
}

std::string CyclotomicElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i >= 1) {
      os << "*z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

CyclotomicElement lift_to_conductor(const CyclotomicElement& x, long m) {
  const long n = x.conductor();
  if (m % n != 0) throw DomainError("lift_to_conductor: target not a multiple");
  if (m == n) return x;
  auto ctx = CyclotomicContext::get(m);
  long step = m / n;  // zeta_N = zeta_M^step
  CyclotomicElement out = CyclotomicElement::zero(ctx);
  const auto& c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    out = out + CyclotomicElement::root_of_unity(ctx, static_cast<long>(i) * step).scaled(c[i]);
  }
  return out;
}

}  // namespace adelab
