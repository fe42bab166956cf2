#include "coleman/matrix.hpp"

#include <algorithm>

namespace coleman {

PadicMatrix::PadicMatrix(long p, long rows, long cols)
    : p_(p), rows_(rows), cols_(cols),
      a_(rows * cols, Padic::zero(p, kExactPrec)) {}

PadicMatrix PadicMatrix::identity(long p, long n) {
  PadicMatrix m(p, n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = Padic::one(p);
  return m;
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& rhs) const {
  PadicMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
  return out;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& rhs) const {
  PadicMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
  return out;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& rhs) const {
  if (cols_ != rhs.rows_) fail(ErrorCode::BadArguments, "matrix shape mismatch");
  PadicMatrix out(p_, rows_, rhs.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k)
      for (long j = 0; j < rhs.cols_; ++j)
        out.at(i, j) = out.at(i, j) + at(i, k) * rhs.at(k, j);
  return out;
}

PadicMatrix PadicMatrix::transposed() const {
  PadicMatrix out(p_, cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Padic PadicMatrix::trace() const {
  Padic t = Padic::zero(p_, kExactPrec);
  for (long i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

Padic PadicMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorCode::BadArguments, "determinant of non-square");
  long n = rows_;
  std::vector<Padic> dp(1L << n, Padic::zero(p_, kExactPrec));
  dp[0] = Padic::one(p_);
  for (long row = 0; row < n; ++row) {
    std::vector<Padic> next(1L << n, Padic::zero(p_, kExactPrec));
    for (long mask = 0; mask < (1L << n); ++mask) {
      if (__builtin_popcountl(mask) != row) continue;
      if (dp[mask].is_zero() && dp[mask].abs_prec() >= kExactPrec / 2) continue;
      for (long j = 0; j < n; ++j) {
        if (mask & (1L << j)) continue;
        // Parity of inversions introduced by placing column j after the
        // columns already used: the used columns above j.
        bool flip = __builtin_popcountl(mask >> (j + 1)) & 1;
        Padic term = dp[mask] * at(row, j);
        if (flip) term = -term;
        next[mask | (1L << j)] = next[mask | (1L << j)] + term;
      }
    }
    dp = std::move(next);
  }
  return dp[(1L << n) - 1];
}

PadicMatrix::Elimination PadicMatrix::bareiss_forward() const {
  if (rows_ != cols_) fail(ErrorCode::BadArguments, "elimination of non-square");
  long n = rows_;
  PadicMatrix w = *this;
  Elimination out;
  Padic prev = Padic::one(p_);
  long sign = 1;
  for (long k = 0; k < n; ++k) {
    long best = -1;
    long best_val = 0;
    for (long i = k; i < n; ++i) {
      const Padic& cand = w.at(i, k);
      if (cand.is_zero()) continue;
      if (best < 0 || cand.valuation() < best_val) {
        best = i;
        best_val = cand.valuation();
      }
    }
    if (best < 0)
      fail(ErrorCode::SingularSystem,
           "matrix singular to working precision (raise the precision)");
    if (best != k) {
      for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(best, j));
      sign = -sign;
    }
    out.pivot_valuations.push_back(w.at(k, k).valuation());
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j)) / prev;
      w.at(i, k) = Padic::zero(p_, w.at(i, k).abs_prec());
    }
    prev = w.at(k, k);
  }
  out.det = sign < 0 ? -w.at(n - 1, n - 1) : w.at(n - 1, n - 1);
  return out;
}

PadicMatrix::Solution PadicMatrix::solve(const std::vector<Padic>& b) const {
  if (rows_ != cols_ || static_cast<long>(b.size()) != rows_)
    fail(ErrorCode::BadArguments, "solve shape mismatch");
  Elimination elim = bareiss_forward();
  if (elim.det.is_zero())
    fail(ErrorCode::SingularSystem,
         "matrix singular to working precision (raise the precision)");
  Solution sol;
  sol.det = elim.det;
  sol.pivot_valuations = elim.pivot_valuations;
  for (long j = 0; j < cols_; ++j) {
    PadicMatrix numer = *this;
    for (long i = 0; i < rows_; ++i) numer.at(i, j) = b[i];
    sol.x.push_back(numer.determinant() / elim.det);
  }
  return sol;
}

PadicPoly PadicMatrix::char_poly() const {
  if (rows_ != cols_) fail(ErrorCode::BadArguments, "char_poly of non-square");
  long n = rows_;
  // Entries of lambda*I - A are degree <= 1 polynomials; expand the
  // determinant with the same subset DP as above.
  auto entry = [&](long i, long j) {
    std::vector<Padic> c;
    c.push_back(-at(i, j));
    if (i == j) c.push_back(Padic::one(p_));
    return PadicPoly(p_, std::move(c));
  };
  std::vector<PadicPoly> dp(1L << n, PadicPoly(p_));
  dp[0] = PadicPoly(p_, {Padic::one(p_)});
  for (long row = 0; row < n; ++row) {
    std::vector<PadicPoly> next(1L << n, PadicPoly(p_));
    for (long mask = 0; mask < (1L << n); ++mask) {
      if (__builtin_popcountl(mask) != row) continue;
      if (dp[mask].is_zero()) continue;
      for (long j = 0; j < n; ++j) {
        if (mask & (1L << j)) continue;
        bool flip = __builtin_popcountl(mask >> (j + 1)) & 1;
        PadicPoly term = dp[mask] * entry(row, j);
        if (flip) term = term.scaled(Padic::from_integer(-1, p_));
        next[mask | (1L << j)] = next[mask | (1L << j)] + term;
      }
    }
    dp = std::move(next);
  }
  return dp[(1L << n) - 1];
}

}  // namespace coleman
