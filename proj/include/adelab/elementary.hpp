#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adelab/numeric.hpp"

namespace adelab {

// Smooth archimedean test functions on P^n(C), built from scale-invariant
// terms: Re/Im(x_i conj(x_j)) / |x|^2 and log of ratios of positive
// combinations of the |x_i|^2.  Values are independent of the homogeneous
// representative.  An opaque numeric callback is allowed for exploratory
// runs; its regularity is the caller's responsibility and is flagged in
// derived bounds.
class ElementaryFunction {
 public:
  struct Bounds {
    double lo = 0.0;
    double hi = 0.0;
    bool exact = false;  // lo/hi attained (vs mere interval bound)
  };

  ElementaryFunction() = default;  // the zero function

  static ElementaryFunction constant(Rat c);
  static ElementaryFunction re_ratio(int i, int j);
  static ElementaryFunction im_ratio(int i, int j);
  // log((sum num[i] |x_i|^2) / (sum den[i] |x_i|^2)), coefficients > 0
  static ElementaryFunction log_ratio(std::vector<Rat> num, std::vector<Rat> den);
  static ElementaryFunction callback(std::function<double(const Eigen::VectorXcd&)> f,
                                     std::optional<Bounds> known_bounds,
                                     std::string label = "callback");

  ElementaryFunction operator+(const ElementaryFunction& o) const;
  ElementaryFunction scaled(const Rat& r) const;

  double eval(const Eigen::VectorXcd& x) const;
  Bounds bounds() const { return bounds_; }
  bool is_expression_class() const { return !has_callback_; }

  std::string describe() const { return label_; }

  // prefix grammar: const:<q> | re:<i>,<j> | im:<i>,<j> |
  // logratio:(<q>,..):(<q>,..) | add(<expr>;<expr>) | scale(<q>;<expr>)
  static ElementaryFunction parse(const std::string& text);

 private:
  struct Term {
    enum class Kind { Const, ReRatio, ImRatio, LogRatio } kind = Kind::Const;
    Rat weight;  // rational multiplier
    Rat value;   // Const
    int i = 0, j = 0;
    std::vector<Rat> num, den;  // LogRatio
  };

  std::vector<Term> terms_;
  bool has_callback_ = false;
  std::function<double(const Eigen::VectorXcd&)> cb_;
  Bounds bounds_;
  std::string label_;

  static Bounds term_bounds(const Term& t);
  void recompute_bounds();
};

}  // namespace adelab
