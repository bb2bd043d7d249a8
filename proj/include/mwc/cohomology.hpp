#pragma once

#include <map>
#include <vector>

#include "mwc/forms.hpp"
#include "mwc/homotopy.hpp"
#include "mwc/matrix.hpp"

namespace mwc {

/// Basis element x^exponent dx_idx of one multidegree block.
struct BasisElem {
  IndexSet idx;
  Exponent exponent;
};

/// De Rham complex of a Laurent polynomial ring cut to the multidegree box
/// [-D, D] per invertible variable and [0, D] otherwise. dx_j has the degree
/// of x_j, so d preserves multidegree and the complex is a finite direct sum
/// of blocks.
class GradedComplex {
 public:
  GradedComplex(RingPtr ring, int window);

  const RingPtr& ring() const { return ring_; }
  int window() const { return window_; }
  std::int64_t p() const { return ring_->ctx.p; }
  int N() const { return ring_->ctx.N; }
  int top_degree() const { return static_cast<int>(ring_->nvars()); }

  bool in_window(const Exponent& m) const;
  /// All blocks in the window, lexicographically ordered.
  std::vector<Exponent> blocks() const;
  std::vector<BasisElem> basis(const Exponent& m, int q) const;

  /// Multidegree of x^e dx_idx.
  static Exponent multidegree(const Exponent& e, const IndexSet& idx);
  /// Homogeneous components of a form; WindowOverflow if any leaves the window.
  std::map<Exponent, Form> split_blocks(const Form& w) const;
  std::vector<std::int64_t> coordinates(const Form& block_part, const Exponent& m) const;
  Form from_coordinates(const Exponent& m, int q, const std::vector<std::int64_t>& coords, int prec) const;

 private:
  RingPtr ring_;
  int window_;
};

/// Integer matrix of d: degree-q basis (columns) -> degree-(q+1) basis (rows).
std::vector<std::vector<std::int64_t>> boundary_matrix_integral(const GradedComplex& cx, int q, const Exponent& m);
/// The same matrix reduced modulo p^K.
ModMatrix boundary_matrix(const GradedComplex& cx, int q, const Exponent& m, int K);
inline ModMatrix boundary_matrix(const GradedComplex& cx, int q, const Exponent& m) {
  return boundary_matrix(cx, q, m, cx.N());
}

/// Elementary divisors p^e of one cohomology group; e = N stands for a
/// summand not distinguishable from Z/p^N at precision N (free summands).
struct CohomBlock {
  int degree = 0;
  Exponent multidegree;
  std::vector<int> divisors;  // ascending exponents, all in [1, N]
  int free_rank = 0;
};

struct CohomReport {
  std::int64_t p = 0;
  int N = 0;
  std::vector<CohomBlock> blocks;  // block order, then degree

  const CohomBlock* find(int degree, const Exponent& m) const;
  /// Group order exponent: Σ divisors.
  int order_exponent(int degree, const Exponent& m) const;
};

/// Cohomology of the Z_p-lattice complex, block by block, with torsion and
/// ranks read from Smith forms at enough guard digits that every nonzero
/// elementary divisor of the integer boundary matrices is resolved.
CohomReport cohomology(const GradedComplex& cx);

/// Closed forms spanning the degree-q cocycles of block m modulo p^N.
std::vector<Form> cocycle_basis(const GradedComplex& cx, int q, const Exponent& m);

struct ExactnessResult {
  bool exact = false;
  int order_exponent = 0;  // minimal e with p^e ω exact
  Form primitive;          // dη = p^e ω
};

/// Decides exactness of a closed form (NotClosed otherwise) by solving
/// dη = p^e ω blockwise over Z/p^prec with the smallest possible e.
ExactnessResult exactness_witness(const GradedComplex& cx, const Form& w);

struct LiftIndependenceCase {
  int degree = 0;
  Exponent multidegree;
  Form cocycle;
  Form difference;      // φ2^* c - φ1^* c
  Form homotopy;        // H(c) from the strong homotopy
  Form solve_primitive; // η from the independent linear solve
  bool homotopy_verified = false;
  bool solve_verified = false;
};

struct LiftIndependenceReport {
  int prec = 0;
  std::vector<LiftIndependenceCase> cases;
  bool all_verified() const;
};

/// For every cocycle generator of the source window, shows that φ1 and φ2
/// induce the same map on cohomology: the pullback difference is dH(c) with
/// H from the strong homotopy, re-validated by a block linear solve.
LiftIndependenceReport lift_independence_on_cohomology(const RingMap& phi1, const RingMap& phi2,
                                                       const GradedComplex& src, const GradedComplex& tgt);

}  // namespace mwc
