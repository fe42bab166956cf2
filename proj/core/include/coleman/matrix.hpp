#pragma once

#include <vector>

#include "coleman/padic.hpp"
#include "coleman/poly.hpp"

namespace coleman {

// Small dense matrix over Q_p (2g x 2g in practice, so n <= 6-ish; the
// algorithms here are exact and division-free where possible).
class PadicMatrix {
 public:
  PadicMatrix(long p, long rows, long cols);

  static PadicMatrix identity(long p, long n);

  long prime() const { return p_; }
  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Padic& at(long i, long j) { return a_[i * cols_ + j]; }
  const Padic& at(long i, long j) const { return a_[i * cols_ + j]; }

  PadicMatrix operator+(const PadicMatrix& rhs) const;
  PadicMatrix operator-(const PadicMatrix& rhs) const;
  PadicMatrix operator*(const PadicMatrix& rhs) const;
  PadicMatrix transposed() const;
  Padic trace() const;

  // Division-free determinant (column-subset dynamic programming).
  Padic determinant() const;

  // Fraction-free (Bareiss) forward elimination with valuation-maximal
  // (|.|_p-largest) pivoting. Returns the pivot valuations in elimination
  // order; the last pivot is the determinant up to sign.
  struct Elimination {
    std::vector<long> pivot_valuations;
    Padic det;
  };
  Elimination bareiss_forward() const;

  struct Solution {
    std::vector<Padic> x;
    Padic det;
    std::vector<long> pivot_valuations;
  };
  // Solves A x = b. The numerators and the determinant are computed
  // division-free, so the only precision loss is the single division by
  // det(A) (valuation m = v_p(det)).
  Solution solve(const std::vector<Padic>& b) const;

  // Characteristic polynomial det(lambda I - A), exact expansion.
  PadicPoly char_poly() const;

 private:
  long p_, rows_, cols_;
  std::vector<Padic> a_;
};

}  // namespace coleman
