#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "coleman/curve.hpp"
#include "coleman/dagger.hpp"
#include "coleman/frobenius.hpp"
#include "coleman/series.hpp"

namespace coleman {

// Interpolating path inside one residue disc, with endpoints at t = 0 and
// t = 1. Non-Weierstrass discs interpolate x linearly; Weierstrass discs
// interpolate y (the local uniformizer) and solve x(t) by Newton from
// f(x) = y(t)^2.
struct DiscPath {
  PadicSeries x_series;
  PadicSeries y_series;
  long order;

  DiscPath(PadicSeries x, PadicSeries y, long m)
      : x_series(std::move(x)), y_series(std::move(y)), order(m) {}
};

struct PrecisionAudit {
  long n_input = 0;       // endpoint digits, already reduced by the Kedlaya
                          // certificate where the linear system is involved
  long kedlaya_loss = 0;  // 1 + floor(log_p max{N, 2g+1})
  long det_loss = 0;      // m = v_p(det(Frob^t - I))
  long tiny_loss = 0;     // floor(log_p(order)) tail term of the tiny series
  bool used_linear_system = false;
  std::vector<long> pivot_valuations;
  long audited_prec = 0;
};

struct IntegralResult {
  std::vector<Padic> values;
  long audited_prec = 0;
  PrecisionAudit audit;
};

// n - max{m, floor(log_p n)} for system-backed integrals; min{n, tail} for
// pure tiny integrals (tail handled per-value by construction).
PrecisionAudit audit_precision(long p, long n_input, long kedlaya_loss,
                               long det_loss,
                               const std::vector<long>& pivot_valuations,
                               long tiny_order, bool used_linear_system);

// The integration engine for one curve. Immutable; the Frobenius data is
// computed once on first use and shared by concurrent readers.
class Integrator {
 public:
  explicit Integrator(HyperellipticCurve curve);

  const HyperellipticCurve& curve() const { return curve_; }
  const FrobeniusData& frobenius() const;

  // All 2g basis integrals between two points of one residue disc.
  IntegralResult tiny_integrals_basis(const CurvePoint& P,
                                      const CurvePoint& Q) const;

  // All 2g basis integrals between affine non-Weierstrass points via the
  // fundamental linear system (valid whether or not the discs coincide).
  IntegralResult integrals_basis(const CurvePoint& P, const CurvePoint& Q) const;

  // Independent variant through the Teichmuller points of the two discs.
  IntegralResult integrals_basis_teichmuller(const CurvePoint& P,
                                             const CurvePoint& Q) const;

  // General odd differential sum_i coeffs[i] w_i + d(exact); endpoints may be
  // Weierstrass points, Weierstrass-disc points, or infinity.
  IntegralResult integrate(const std::vector<Padic>& coeffs,
                           const DaggerForm* exact, const CurvePoint& P,
                           const CurvePoint& Q) const;

  // Tiny integral of a single 1-form g(x,y) dx/2y along the disc path
  // between P and Q (any parity; Weierstrass discs need y-exponents <= 0).
  Padic tiny_integral_form(const DaggerForm& form, const CurvePoint& P,
                           const CurvePoint& Q, long digits = 0) const;

  // Local interpolation between two points of one disc, for inspection.
  DiscPath disc_path(const CurvePoint& P, const CurvePoint& Q, long order) const;

 private:
  std::vector<Padic> tiny_basis(const CurvePoint& P, const CurvePoint& Q,
                                long digits) const;
  IntegralResult solve_system(const std::vector<Padic>& rhs, long n_input) const;
  long endpoint_digits(const CurvePoint& P) const;
  long tiny_order(long digits) const;
  Padic eval_path_integral(const PadicSeries& integrand, long m) const;

  HyperellipticCurve curve_;
  mutable std::once_flag frob_once_;
  mutable std::optional<FrobeniusData> frob_;
};

}  // namespace coleman
