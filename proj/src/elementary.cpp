#include "adelab/elementary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <limits>

namespace adelab {

namespace {

Rat parse_rat_str(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("elementary function grammar: bad rational '" + s + "'");
  }
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ConfigError("elementary function grammar: expected (q,...), got '" + s + "'");
  }
  std::vector<Rat> out;
  std::string cur;
  for (char ch : s.substr(1, s.size() - 2)) {
    if (ch == ',') {
      out.push_back(parse_rat_str(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(parse_rat_str(cur));
  return out;
}

// splits "lhs;rhs" at the top parenthesis level
std::pair<std::string, std::string> split_top(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ';' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw ConfigError("elementary function grammar: missing ';' in '" + s + "'");
}

}  // namespace

ElementaryFunction ElementaryFunction::constant(Rat c) {
  ElementaryFunction f;
  c.canonicalize();
  Term t;
  t.kind = Term::Kind::Const;
  t.weight = 1;
  t.value = c;
  f.terms_.push_back(std::move(t));
  f.label_ = "const:" + f.terms_[0].value.get_str();
  f.recompute_bounds();
  return f;
}

ElementaryFunction ElementaryFunction::re_ratio(int i, int j) {
  ElementaryFunction f;
  Term t;
  t.kind = Term::Kind::ReRatio;
  t.weight = 1;
  t.i = i;
  t.j = j;
  f.terms_.push_back(t);
  f.label_ = "re:" + std::to_string(i) + "," + std::to_string(j);
  f.recompute_bounds();
  return f;
}

ElementaryFunction ElementaryFunction::im_ratio(int i, int j) {
  ElementaryFunction f;
  Term t;
  t.kind = Term::Kind::ImRatio;
  t.weight = 1;
  t.i = i;
  t.j = j;
  f.terms_.push_back(t);
  f.label_ = "im:" + std::to_string(i) + "," + std::to_string(j);
  f.recompute_bounds();
  return f;
}

ElementaryFunction ElementaryFunction::log_ratio(std::vector<Rat> num, std::vector<Rat> den) {
  if (num.size() != den.size() || num.empty()) {
    throw DomainError("log_ratio: coefficient lists must match and be nonempty");
  }
  for (auto& c : num) {
    c.canonicalize();
    if (c <= 0) throw DomainError("log_ratio: coefficients must be positive");
  }
  for (auto& c : den) {
    c.canonicalize();
    if (c <= 0) throw DomainError("log_ratio: coefficients must be positive");
  }
  ElementaryFunction f;
  Term t;
  t.kind = Term::Kind::LogRatio;
  t.weight = 1;
  t.num = std::move(num);
  t.den = std::move(den);
  std::ostringstream os;
  os << "logratio:(";
  for (std::size_t k = 0; k < t.num.size(); ++k) os << (k ? "," : "") << t.num[k].get_str();
  os << "):(";
  for (std::size_t k = 0; k < t.den.size(); ++k) os << (k ? "," : "") << t.den[k].get_str();
  os << ")";
  f.label_ = os.str();
  f.terms_.push_back(std::move(t));
  f.recompute_bounds();
  return f;
}

ElementaryFunction ElementaryFunction::callback(
    std::function<double(const Eigen::VectorXcd&)> fn, std::optional<Bounds> known_bounds,
    std::string label) {
  ElementaryFunction f;
  f.has_callback_ = true;
  f.cb_ = std::move(fn);
  f.label_ = std::move(label);
  if (known_bounds) {
    f.bounds_ = *known_bounds;
  } else {
    f.bounds_ = {-std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity(), false};
  }
  return f;
}

ElementaryFunction ElementaryFunction::operator+(const ElementaryFunction& o) const {
  if (has_callback_ || o.has_callback_) {
    throw DomainError("ElementaryFunction: callbacks cannot be combined");
  }
  ElementaryFunction f;
  f.terms_ = terms_;
  f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
  f.label_ = "add(" + label_ + ";" + o.label_ + ")";
  f.recompute_bounds();
  return f;
}

ElementaryFunction ElementaryFunction::scaled(const Rat& r_in) const {
  if (has_callback_) throw DomainError("ElementaryFunction: callbacks cannot be scaled");
  Rat r = r_in;
  r.canonicalize();
  ElementaryFunction f;
  f.terms_ = terms_;
  for (auto& t : f.terms_) t.weight *= r;
  f.label_ = "scale(" + r.get_str() + ";" + label_ + ")";
  f.recompute_bounds();
  return f;
}

double ElementaryFunction::eval(const Eigen::VectorXcd& x) const {
  if (has_callback_) return cb_(x);
  const double n2 = x.squaredNorm();
  if (!(n2 > 0)) throw DomainError("ElementaryFunction: zero vector");
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = 0.0;
    switch (t.kind) {
      case Term::Kind::Const:
        v = t.value.get_d();
        break;
      case Term::Kind::ReRatio: {
        auto prod = x[t.i] * std::conj(x[t.j]);
        v = prod.real() / n2;
        break;
      }
      case Term::Kind::ImRatio: {
        auto prod = x[t.i] * std::conj(x[t.j]);
        v = prod.imag() / n2;
        break;
      }
      case Term::Kind::LogRatio: {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < t.num.size(); ++k) {
          double m2 = std::norm(x[static_cast<Eigen::Index>(k)]);
          num += t.num[k].get_d() * m2;
          den += t.den[k].get_d() * m2;
        }
        v = std::log(num / den);
        break;
      }
    }
    s += t.weight.get_d() * v;
  }
  return s;
}

ElementaryFunction::Bounds ElementaryFunction::term_bounds(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Const: {
      double v = t.value.get_d();
      return {v, v, true};
    }
    case Term::Kind::ReRatio:
      if (t.i == t.j) return {0.0, 1.0, true};
      return {-0.5, 0.5, true};
    case Term::Kind::ImRatio:
      if (t.i == t.j) return {0.0, 0.0, true};
      return {-0.5, 0.5, true};
    case Term::Kind::LogRatio: {
      // linear-fractional over the simplex of |x_i|^2: extremes at vertices
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < t.num.size(); ++k) {
        double v = std::log(t.num[k].get_d() / t.den[k].get_d());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return {lo, hi, true};
    }
  }
  return {0, 0, false};
}

void ElementaryFunction::recompute_bounds() {
  double lo = 0.0, hi = 0.0;
  int nontrivial = 0;
  for (const auto& t : terms_) {
    Bounds b = term_bounds(t);
    double w = t.weight.get_d();
    double a = w * b.lo, bb = w * b.hi;
    if (a > bb) std::swap(a, bb);
    lo += a;
    hi += bb;
    if (t.kind != Term::Kind::Const && b.lo != b.hi) ++nontrivial;
  }
  // interval arithmetic is exact only when at most one term can vary
  bounds_ = {lo, hi, nontrivial <= 1};
}

ElementaryFunction ElementaryFunction::parse(const std::string& text) {
  if (text.rfind("const:", 0) == 0) {
    return constant(parse_rat_str(text.substr(6)));
  }
  if (text.rfind("re:", 0) == 0 || text.rfind("im:", 0) == 0) {
    bool re = text[0] == 'r';
    auto body = text.substr(3);
    auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("elementary function grammar: expected re:i,j / im:i,j");
    }
    int i = std::stoi(body.substr(0, comma));
    int j = std::stoi(body.substr(comma + 1));
    return re ? re_ratio(i, j) : im_ratio(i, j);
  }
  if (text.rfind("logratio:", 0) == 0) {
    auto body = text.substr(9);
    // (list):(list)
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')') --depth;
      if (body[i] == ':' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      throw ConfigError("elementary function grammar: logratio:(..):(..) expected");
    }
    return log_ratio(parse_rat_list(body.substr(0, split)),
                     parse_rat_list(body.substr(split + 1)));
  }
  if (text.rfind("add(", 0) == 0 && text.back() == ')') {
    auto [lhs, rhs] = split_top(text.substr(4, text.size() - 5));
    return parse(lhs) + parse(rhs);
  }
  if (text.rfind("scale(", 0) == 0 && text.back() == ')') {
    auto [lhs, rhs] = split_top(text.substr(6, text.size() - 7));
    return parse(rhs).scaled(parse_rat_str(lhs));
  }
  throw ConfigError("elementary function grammar: cannot parse '" + text + "'");
}

}  // namespace adelab
