#pragma once

#include <map>
#include <string>
#include <vector>

#include "mwc/lpoly.hpp"

namespace mwc {

/// Strictly increasing variable indices (i_1 < ... < i_q) naming dx_{i_1}∧...∧dx_{i_q}.
using IndexSet = std::vector<int>;

/// Homogeneous differential form of degree q over a Laurent polynomial ring.
/// Only sorted index sets are stored; zero coefficients are pruned. Degree -1
/// is allowed and denotes the zero module (the target of L on functions).
class Form {
 public:
  using TermMap = std::map<IndexSet, LPoly>;

  Form(RingPtr ring, int degree, int prec);

  static Form function(const LPoly& f);
  /// dx_j with coefficient 1.
  static Form differential(const RingPtr& ring, std::size_t j, int prec);
  /// coeff * dx_{idx[0]} ∧ ... (any order; sorted with sign, zero on repeats).
  static Form monomial(const LPoly& coeff, const std::vector<int>& idx);

  const RingPtr& ring() const { return ring_; }
  int degree() const { return degree_; }
  int prec() const { return prec_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LPoly coefficient(const IndexSet& idx) const;

  Form reduced(int prec) const;
  Form rebased(const RingPtr& ring) const;

  Form operator-() const;
  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  Form& operator+=(const Form& b) { return *this = *this + b; }
  /// Multiplication by a function.
  Form times(const LPoly& f) const;
  Form scaled(const PrecScalar& c) const;

  /// Equality at the common precision.
  friend bool operator==(const Form& a, const Form& b);

  std::string to_string() const;

 private:
  void add_term(const IndexSet& idx, const LPoly& c);

  RingPtr ring_;
  int degree_;
  int prec_;
  TermMap terms_;
};

Form wedge(const Form& a, const Form& b);
/// Exterior derivative.
Form d(const Form& w);
/// φ^*: coefficients f ↦ φ(f), dx_j ↦ d(φ(x_j)).
Form pullback(const RingMap& phi, const Form& w);

/// Ring B[T] with T adjoined as variable 0 (so dT sorts first), truncated at
/// T^{t_window+1}. T gets a fresh name if the base already uses "T".
RingPtr adjoin_t(const RingPtr& base, int t_window);
/// Inclusion B -> B[T].
LPoly embed_in_t(const LPoly& f, const RingPtr& extended);
/// Coefficient of T^i of an element of B[T], as an element of B.
std::map<int, LPoly> split_by_t(const LPoly& f, const RingPtr& base);

/// Form over B[T] written as Σ_i T^i (ω'_i + dT∧ω''_i) with ω'_i, ω''_i over B.
class TForm {
 public:
  TForm(RingPtr base, int degree, int prec);

  const RingPtr& base() const { return base_; }
  int degree() const { return degree_; }
  int prec() const { return prec_; }
  const std::map<int, Form>& primes() const { return primes_; }
  const std::map<int, Form>& dprimes() const { return dprimes_; }
  Form prime(int i) const;
  Form dprime(int i) const;
  /// Largest i with a nonzero pair (-1 when zero).
  int t_degree() const;

  /// Adds T^i ω' (ω' of degree q) or T^i dT∧ω'' (ω'' of degree q-1).
  void add_prime(int i, const Form& w);
  void add_dprime(int i, const Form& w);

  /// Decomposes a form over the extended ring from adjoin_t().
  static TForm from_form(const Form& w, const RingPtr& base);
  Form to_form(const RingPtr& extended) const;

  friend TForm operator+(const TForm& a, const TForm& b);
  friend TForm operator-(const TForm& a, const TForm& b);
  friend bool operator==(const TForm& a, const TForm& b);

 private:
  RingPtr base_;
  int degree_;
  int prec_;
  std::map<int, Form> primes_;
  std::map<int, Form> dprimes_;
};

/// d on B[T]: (ω'_i, ω''_i) ↦ (dω'_i, (i+1)ω'_{i+1} - dω''_i).
TForm d_t(const TForm& w);
/// T ↦ c, dT ↦ 0: Σ c^i ω'_i.
Form eval_t(const TForm& w, std::int64_t c);

}  // namespace mwc
