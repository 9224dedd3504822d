#include "adelab/fq_poly.hpp"

#include <algorithm>
#include <sstream>

namespace adelab {

FqPoly::FqPoly(std::shared_ptr<const FqContext> ctx, std::vector<Fq> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  normalize();
}

void FqPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPoly FqPoly::constant(std::shared_ptr<const FqContext> ctx, const Fq& c) {
  return FqPoly(std::move(ctx), std::vector<Fq>{c});
}

FqPoly FqPoly::x(std::shared_ptr<const FqContext> ctx) {
  return FqPoly(ctx, std::vector<Fq>{Fq::zero(ctx), Fq::one(ctx)});
}

FqPoly FqPoly::from_ints(std::shared_ptr<const FqContext> ctx,
                         const std::vector<long>& coeffs) {
  std::vector<Fq> c;
  c.reserve(coeffs.size());
  const long p = static_cast<long>(ctx->p());
  for (long v : coeffs) {
    long r = ((v % p) + p) % p;
    c.emplace_back(ctx, static_cast<std::uint64_t>(r));
  }
  return FqPoly(std::move(ctx), std::move(c));
}

bool FqPoly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

Fq FqPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Fq::zero(ctx_);
  return c_[static_cast<std::size_t>(i)];
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  std::vector<Fq> c(std::max(c_.size(), o.c_.size()), Fq::zero(ctx_));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Fq a = i < c_.size() ? c_[i] : Fq::zero(ctx_);
    Fq b = i < o.c_.size() ? o.c_[i] : Fq::zero(ctx_);
    c[i] = a + b;
  }
  return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator-() const {
  std::vector<Fq> c = c_;
  for (auto& v : c) v = -v;
  return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(ctx_);
  std::vector<Fq> c(c_.size() + o.c_.size() - 1, Fq::zero(ctx_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
  }
  return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::scaled(const Fq& s) const {
  std::vector<Fq> c = c_;
  for (auto& v : c) v = v * s;
  return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Fq FqPoly::eval(const Fq& at) const {
  Fq r = Fq::zero(ctx_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * at + c_[i];
  return r;
}

FqPoly FqPoly::derivative() const {
  if (c_.size() <= 1) return FqPoly(ctx_);
  std::vector<Fq> c;
  c.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    Fq scale(ctx_, static_cast<std::uint64_t>(i % ctx_->p()));
    c.push_back(c_[i] * scale);
  }
  return FqPoly(ctx_, std::move(c));
}

FqPoly FqPoly::coeff_frobenius(int k) const {
  std::vector<Fq> c = c_;
  for (auto& v : c) v = v.frobenius(k);
  return FqPoly(ctx_, std::move(c));
}

std::string FqPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || !c_[i].is_one()) os << c_[i].to_string();
    if (i >= 1) {
      if (i == 0 || !c_[i].is_one()) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string FqPoly::hash_key() const {
  // lossless serialization; doubles as an exact identity key
  std::ostringstream os;
  for (const auto& v : c_) {
    for (std::uint64_t w : v.coeffs()) os << w << ".";
    os << ";";
  }
  return os.str();
}

void fq_poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& quot, FqPoly& rem) {
  if (b.is_zero()) throw DomainError("FqPoly: division by zero");
  auto ctx = a.ctx();
  std::vector<Fq> r(a.coeffs());
  std::vector<Fq> q;
  int db = b.degree();
  if (a.degree() >= db) q.assign(static_cast<std::size_t>(a.degree() - db + 1), Fq::zero(ctx));
  Fq lb_inv = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    Fq c = r[static_cast<std::size_t>(i)] * lb_inv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = slot - c * b.coeff(j);
    }
  }
  quot = FqPoly(ctx, std::move(q));
  rem = FqPoly(ctx, std::move(r));
}

FqPoly fq_poly_gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly q, r;
    fq_poly_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

FqPoly fq_poly_powmod(const FqPoly& base, const Int& exp, const FqPoly& mod) {
  FqPoly q, r;
  fq_poly_divmod(base, mod, q, r);
  FqPoly acc = FqPoly::constant(base.ctx(), Fq::one(base.ctx()));
  Int e = exp;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) {
      acc = acc * r;
      FqPoly qq, rr;
      fq_poly_divmod(acc, mod, qq, rr);
      acc = rr;
    }
    r = r * r;
    FqPoly qq, rr;
    fq_poly_divmod(r, mod, qq, rr);
    r = rr;
    e >>= 1;
  }
  return acc;
}

namespace {

Int q_power(const FqPoly& f, int d) {
  Int e = 1;
  for (int i = 0; i < d; ++i) e *= static_cast<unsigned long>(f.ctx()->q());
  return e;
}

// p-th root of a squarefree-part residue g = h^p (all exponents divisible by p).
FqPoly pth_root(const FqPoly& g) {
  auto ctx = g.ctx();
  const int p = static_cast<int>(ctx->p());
  std::vector<Fq> c;
  for (int i = 0; i <= g.degree(); i += p) {
    // p-th root of a in F_{p^e} is a^(p^(e-1))
    c.push_back(g.coeff(i).frobenius(ctx->e() - 1));
  }
  return FqPoly(ctx, std::move(c));
}

std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FqPoly& f_in) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly f = f_in.monic();
  const int p = static_cast<int>(f.ctx()->p());
  FqPoly df = f.derivative();
  FqPoly c = fq_poly_gcd(f, df);
  FqPoly w, dummy;
  fq_poly_divmod(f, c, w, dummy);
  int i = 1;
  while (!w.is_one()) {
    FqPoly y = fq_poly_gcd(w, c);
    FqPoly fac;
    fq_poly_divmod(w, y, fac, dummy);
    if (!fac.is_one()) out.emplace_back(fac.monic(), i);
    w = y;
    FqPoly c2;
    fq_poly_divmod(c, y, c2, dummy);
    c = c2;
    ++i;
  }
  if (!c.is_one()) {
    // c is a p-th power
    FqPoly v = pth_root(c);
    for (auto& [g, m] : squarefree_decomposition(v)) out.emplace_back(g, m * p);
  }
  return out;
}

// Distinct-degree: splits squarefree monic f into products of irreducibles
// of equal degree d.
std::vector<std::pair<FqPoly, int>> distinct_degree(const FqPoly& f_in) {
  std::vector<std::pair<FqPoly, int>> out;  // (product, degree)
  auto ctx = f_in.ctx();
  FqPoly f = f_in;
  FqPoly xp = FqPoly::x(ctx);
  FqPoly h = xp;
  int d = 0;
  while (f.degree() > 2 * (d + 1) - 1 && f.degree() > 0) {
    ++d;
    h = fq_poly_powmod(h, Int(static_cast<unsigned long>(ctx->q())), f);
    FqPoly g = fq_poly_gcd(h - xp, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      FqPoly q, r;
      fq_poly_divmod(f, g, q, r);
      f = q;
      FqPoly qq, rr;
      fq_poly_divmod(h, f, qq, rr);
      h = rr;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

FqPoly random_poly_below(const std::shared_ptr<const FqContext>& ctx, int deg_bound,
                         SplitMix64& rng) {
  std::vector<Fq> c;
  c.reserve(static_cast<std::size_t>(deg_bound));
  for (int i = 0; i < deg_bound; ++i) {
    std::vector<std::uint64_t> rc(static_cast<std::size_t>(ctx->e()));
    for (auto& v : rc) v = rng.below(ctx->p());
    c.emplace_back(ctx, std::move(rc));
  }
  return FqPoly(ctx, std::move(c));
}

void equal_degree_split(const FqPoly& f, int d, SplitMix64& rng,
                        std::vector<FqPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  auto ctx = f.ctx();
  FqPoly one = FqPoly::constant(ctx, Fq::one(ctx));
  while (true) {
    FqPoly r = random_poly_below(ctx, f.degree(), rng);
    if (r.degree() < 1) continue;
    FqPoly g = fq_poly_gcd(r, f);
    if (!g.is_one() && g.degree() < f.degree()) {
      // lucky split
      FqPoly q, rem;
      fq_poly_divmod(f, g, q, rem);
      equal_degree_split(g, d, rng, out);
      equal_degree_split(q, d, rng, out);
      return;
    }
    FqPoly s;
    if (ctx->p() == 2) {
      // trace map: r + r^2 + r^4 + ... over F_2
      int rounds = ctx->e() * d;
      FqPoly acc = r;
      FqPoly term = r;
      for (int i = 1; i < rounds; ++i) {
        term = fq_poly_powmod(term, 2, f);
        acc = acc + term;
        FqPoly qq, rr;
        fq_poly_divmod(acc, f, qq, rr);
        acc = rr;
      }
      s = acc;
    } else {
      Int m = (q_power(f, d) - 1) / 2;
      s = fq_poly_powmod(r, m, f) - one;
    }
    FqPoly g2 = fq_poly_gcd(s, f);
    if (!g2.is_one() && g2.degree() < f.degree()) {
      FqPoly q, rem;
      fq_poly_divmod(f, g2, q, rem);
      equal_degree_split(g2, d, rng, out);
      equal_degree_split(q, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool fq_poly_is_irreducible(const FqPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  auto ctx = f.ctx();
  FqPoly xp = FqPoly::x(ctx);
  int n = f.degree();
  FqPoly xqn = fq_poly_powmod(xp, q_power(f, n), f);
  FqPoly diff = xqn - xp;
  {
    FqPoly q, r;
    fq_poly_divmod(diff, f, q, r);
    if (!r.is_zero()) return false;
  }
  int m = n;
  std::vector<int> prime_divs;
  for (int l = 2; l * l <= m; ++l) {
    if (m % l == 0) {
      prime_divs.push_back(l);
      while (m % l == 0) m /= l;
    }
  }
  if (m > 1) prime_divs.push_back(m);
  for (int l : prime_divs) {
    FqPoly h = fq_poly_powmod(xp, q_power(f, n / l), f);
    if (!fq_poly_gcd(h - xp, f).is_one()) return false;
  }
  return true;
}

std::vector<std::pair<FqPoly, int>> fq_poly_factor(const FqPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("fq_poly_factor: zero polynomial");
  std::vector<std::pair<FqPoly, int>> out;
  if (f.degree() < 1) return out;
  SplitMix64 rng(seed);
  for (const auto& [sf, mult] : squarefree_decomposition(f)) {
    for (const auto& [prod, d] : distinct_degree(sf)) {
      std::vector<FqPoly> irr;
      equal_degree_split(prod, d, rng, irr);
      for (auto& g : irr) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return fq_poly_less(a.first, b.first);
  });
  return out;
}

bool fq_poly_less(const FqPoly& a, const FqPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto& ca = a.coeff(i).coeffs();
    const auto& cb = b.coeff(i).coeffs();
    if (ca != cb) return ca < cb;
  }
  return false;
}

}  // namespace adelab
