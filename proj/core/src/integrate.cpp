#include "coleman/integrate.hpp"

#include <algorithm>

namespace coleman {

namespace {

bool is_weierstrass_point(const CurvePoint& P) {
  return P.is_infinity() || P.y().is_zero();
}

bool same_point(const CurvePoint& P, const CurvePoint& Q) {
  if (P.is_infinity() || Q.is_infinity())
    return P.is_infinity() && Q.is_infinity();
  return P.x() == Q.x() && P.y() == Q.y();
}

// Value of an A-dagger function at the point at infinity: each monomial
// x^d y^(-j) has T-order j(2g+1) - 2d in the local parameter there.
Padic evaluate_dagger_at_infinity(const DaggerForm& h,
                                  const HyperellipticCurve& curve) {
  long p = curve.prime();
  long w = 2 * curve.genus() + 1;
  Padic acc = Padic::zero(p, kExactPrec);
  for (const auto& [j, B] : h.terms()) {
    for (long d = 0; d <= B.degree(); ++d) {
      if (B.coeff(d).is_zero()) continue;
      long ord = j * w - 2 * d;
      if (ord < 0)
        fail(ErrorCode::DivergentExactPart,
             "exact part diverges at infinity");
      if (ord == 0) acc = acc + B.coeff(d);
    }
  }
  return acc;
}

Padic eval_exact_at(const DaggerForm& h, const CurvePoint& P,
                    const HyperellipticCurve& curve) {
  if (P.is_infinity()) return evaluate_dagger_at_infinity(h, curve);
  if (h.max_y_exponent() > 0 && (P.y().is_zero() || P.y().valuation() > 0))
    fail(ErrorCode::DivergentExactPart,
         "exact part diverges in a Weierstrass disc");
  return evaluate_dagger(h, P);
}

}  // namespace

PrecisionAudit audit_precision(long p, long n_input, long kedlaya_loss,
                               long det_loss,
                               const std::vector<long>& pivot_valuations,
                               long tiny_order, bool used_linear_system) {
  PrecisionAudit a;
  a.n_input = n_input;
  a.kedlaya_loss = kedlaya_loss;
  a.det_loss = det_loss;
  a.tiny_loss = floor_log(p, std::max<long>(tiny_order, 1));
  a.used_linear_system = used_linear_system;
  a.pivot_valuations = pivot_valuations;
  if (used_linear_system) {
    a.audited_prec =
        n_input - std::max(det_loss, floor_log(p, std::max<long>(n_input, 1)));
  } else {
    long tail = tiny_order + 1 - floor_log(p, tiny_order + 1);
    a.audited_prec = std::min(n_input, tail);
  }
  a.audited_prec = std::max<long>(a.audited_prec, 0);
  return a;
}

Integrator::Integrator(HyperellipticCurve curve) : curve_(std::move(curve)) {}

const FrobeniusData& Integrator::frobenius() const {
  std::call_once(frob_once_, [&] { frob_ = frobenius_action(curve_); });
  return *frob_;
}

long Integrator::endpoint_digits(const CurvePoint& P) const {
  if (P.is_infinity()) return curve_.working_prec();
  long n = std::min(P.x().abs_prec(), P.y().abs_prec());
  return std::min(n, curve_.working_prec());
}

long Integrator::tiny_order(long digits) const {
  long d = std::max<long>(digits, 1);
  return d + floor_log(curve_.prime(), d) + 1;
}

Padic Integrator::eval_path_integral(const PadicSeries& integrand,
                                     long m) const {
  PadicSeries F = integrand.integrated();
  Padic acc = Padic::zero(curve_.prime(), kExactPrec);
  for (long i = F.order() - 1; i >= 1; --i) acc = acc + F.coeff(i);
  long tail = m + 1 - floor_log(curve_.prime(), m + 1);
  return acc.truncated(std::min(acc.abs_prec(), tail));
}

DiscPath Integrator::disc_path(const CurvePoint& P, const CurvePoint& Q,
                               long order) const {
  if (P.is_infinity() || Q.is_infinity())
    fail(ErrorCode::InfiniteDisc, "no local interpolation through infinity");
  DiscDescriptor dP = curve_.classify_disc(P);
  DiscDescriptor dQ = curve_.classify_disc(Q);
  if (!dP.same_disc(dQ))
    fail(ErrorCode::DiscMismatch, "endpoints lie in different residue discs");
  if (!dP.weierstrass) {
    Padic dx = Q.x() - P.x();
    PadicSeries x = PadicSeries::linear(P.x(), dx, order);
    PadicSeries h = curve_.f().compose(x);
    PadicSeries y = h.sqrt(P.y());
    return DiscPath(std::move(x), std::move(y), order);
  }
  // Weierstrass disc: interpolate y, solve f(x) = y(t)^2 by Newton from x(P).
  Padic dy = Q.y() - P.y();
  PadicSeries y = PadicSeries::linear(P.y(), dy, order);
  PadicSeries y2 = y * y;
  PadicSeries x = PadicSeries::constant(P.x(), 1);
  long known = 1;
  while (known < order) {
    long next = std::min(2 * known, order);
    PadicSeries xs = x.padded(next);
    PadicSeries num = curve_.f().compose(xs) - y2.truncated(next);
    PadicSeries den = curve_.f_derivative().compose(xs);
    x = xs - num / den;
    known = next;
  }
  return DiscPath(std::move(x), std::move(y), order);
}

std::vector<Padic> Integrator::tiny_basis(const CurvePoint& P,
                                          const CurvePoint& Q,
                                          long digits) const {
  long p = curve_.prime();
  long g = curve_.genus();
  if (same_point(P, Q))
    return std::vector<Padic>(2 * g, Padic::zero(p, digits));
  long m = tiny_order(digits);
  DiscPath path = disc_path(P, Q, m);
  DiscDescriptor d = curve_.classify_disc(P);
  std::vector<Padic> out;
  out.reserve(2 * g);
  if (!d.weierstrass) {
    // integrand_i = x(t)^i * x'(t) / (2 y(t)), x'(t) = x(Q) - x(P)
    Padic dx = Q.x() - P.x();
    PadicSeries base =
        PadicSeries::constant(dx, m) /
        path.y_series.scaled(Padic::from_integer(2, p));
    PadicSeries xpow = PadicSeries::constant(Padic::one(p), m);
    for (long i = 0; i < 2 * g; ++i) {
      if (i > 0) xpow = xpow * path.x_series;
      out.push_back(eval_path_integral(xpow * base, m));
    }
    return out;
  }
  // Weierstrass disc: dx/(2y) = dy/f'(x), y'(t) = y(Q) - y(P)
  Padic dy = Q.y() - P.y();
  PadicSeries base = PadicSeries::constant(dy, m) /
                     curve_.f_derivative().compose(path.x_series);
  PadicSeries xpow = PadicSeries::constant(Padic::one(p), m);
  for (long i = 0; i < 2 * g; ++i) {
    if (i > 0) xpow = xpow * path.x_series;
    out.push_back(eval_path_integral(xpow * base, m));
  }
  return out;
}

IntegralResult Integrator::tiny_integrals_basis(const CurvePoint& P,
                                                const CurvePoint& Q) const {
  if (P.is_infinity() || Q.is_infinity())
    fail(ErrorCode::InfiniteDisc, "tiny integrals need affine endpoints");
  curve_.require_on_curve(P);
  curve_.require_on_curve(Q);
  long n = std::min(endpoint_digits(P), endpoint_digits(Q));
  long digits = std::min<long>(curve_.target_digits(), n);
  IntegralResult r;
  r.values = tiny_basis(P, Q, digits);
  long order = tiny_order(digits);
  r.audit = audit_precision(curve_.prime(), n, 0, 0, {}, order, false);
  long tracked = r.audit.audited_prec;
  for (const Padic& v : r.values) tracked = std::min(tracked, v.abs_prec());
  r.audited_prec = tracked;
  r.audit.audited_prec = tracked;
  return r;
}

IntegralResult Integrator::solve_system(const std::vector<Padic>& rhs,
                                        long n_input) const {
  const FrobeniusData& fd = frobenius();
  long p = curve_.prime();
  long g = curve_.genus();
  PadicMatrix B = fd.M - PadicMatrix::identity(p, 2 * g);
  PadicMatrix::Solution sol = B.solve(rhs);
  long m = sol.det.is_zero() ? n_input : sol.det.valuation();
  long n_ked = curve_.working_prec() - fd.certified_prec;
  IntegralResult r;
  r.audit = audit_precision(p, n_input, n_ked, m, sol.pivot_valuations,
                            tiny_order(n_input), true);
  r.values = std::move(sol.x);
  long audited = r.audit.audited_prec;
  for (const Padic& v : r.values) audited = std::min(audited, v.abs_prec());
  r.audited_prec = audited;
  if (r.audited_prec < r.audit.audited_prec) r.audit.audited_prec = r.audited_prec;
  return r;
}

IntegralResult Integrator::integrals_basis(const CurvePoint& P,
                                           const CurvePoint& Q) const {
  if (P.is_infinity() || Q.is_infinity())
    fail(ErrorCode::WeierstrassDisc,
         "integrals_basis needs affine non-Weierstrass endpoints (use integrate)");
  curve_.require_on_curve(P);
  curve_.require_on_curve(Q);
  DiscDescriptor dP = curve_.classify_disc(P);
  DiscDescriptor dQ = curve_.classify_disc(Q);
  if (dP.weierstrass || dQ.weierstrass)
    fail(ErrorCode::WeierstrassDisc,
         "integrals_basis needs non-Weierstrass endpoints (use integrate)");
  const FrobeniusData& fd = frobenius();
  long g = curve_.genus();
  long n = std::min({endpoint_digits(P), endpoint_digits(Q), fd.certified_prec});
  CurvePoint phiP = curve_.frobenius_point(P);
  CurvePoint phiQ = curve_.frobenius_point(Q);
  std::vector<Padic> tinyP = tiny_basis(P, phiP, n);
  std::vector<Padic> tinyQ = tiny_basis(phiQ, Q, n);
  std::vector<Padic> rhs;
  rhs.reserve(2 * g);
  for (long i = 0; i < 2 * g; ++i) {
    Padic fiP = evaluate_dagger(fd.exact_parts[i], P);
    Padic fiQ = evaluate_dagger(fd.exact_parts[i], Q);
    rhs.push_back(fiP - fiQ - tinyP[i] - tinyQ[i]);
  }
  return solve_system(rhs, n);
}

IntegralResult Integrator::integrals_basis_teichmuller(
    const CurvePoint& P, const CurvePoint& Q) const {
  if (P.is_infinity() || Q.is_infinity())
    fail(ErrorCode::WeierstrassDisc,
         "integrals_basis needs affine non-Weierstrass endpoints (use integrate)");
  curve_.require_on_curve(P);
  curve_.require_on_curve(Q);
  const FrobeniusData& fd = frobenius();
  long g = curve_.genus();
  long n = std::min({endpoint_digits(P), endpoint_digits(Q), fd.certified_prec});
  CurvePoint TP = curve_.teichmuller_point(P);
  CurvePoint TQ = curve_.teichmuller_point(Q);
  std::vector<Padic> rhs;
  rhs.reserve(2 * g);
  for (long i = 0; i < 2 * g; ++i)
    rhs.push_back(evaluate_dagger(fd.exact_parts[i], TP) -
                  evaluate_dagger(fd.exact_parts[i], TQ));
  IntegralResult r = solve_system(rhs, n);
  std::vector<Padic> head = tiny_basis(P, TP, n);
  std::vector<Padic> tail = tiny_basis(TQ, Q, n);
  long audited = r.audited_prec;
  for (long i = 0; i < 2 * g; ++i) {
    r.values[i] = head[i] + r.values[i] + tail[i];
    audited = std::min(audited, r.values[i].abs_prec());
  }
  r.audited_prec = audited;
  r.audit.audited_prec = audited;
  return r;
}

Padic Integrator::tiny_integral_form(const DaggerForm& form,
                                     const CurvePoint& P, const CurvePoint& Q,
                                     long digits) const {
  if (P.is_infinity() || Q.is_infinity())
    fail(ErrorCode::InfiniteDisc, "tiny integrals need affine endpoints");
  long p = curve_.prime();
  if (digits <= 0)
    digits = std::min({curve_.target_digits(), endpoint_digits(P),
                       endpoint_digits(Q)});
  if (same_point(P, Q)) return Padic::zero(p, digits);
  long m = tiny_order(digits);
  DiscPath path = disc_path(P, Q, m);
  DiscDescriptor d = curve_.classify_disc(P);
  if (d.weierstrass && form.max_y_exponent() > 0)
    fail(ErrorCode::PoleAtEndpoint,
         "integrand has a pole in the Weierstrass disc of the path");
  // g(x(t), y(t)) as a series
  PadicSeries gs = PadicSeries::constant(Padic::zero(p, kExactPrec), m);
  PadicSeries yinv(p, m);
  if (form.max_y_exponent() > 0)
    yinv = PadicSeries::constant(Padic::one(p), m) / path.y_series;
  for (const auto& [j, B] : form.terms()) {
    PadicSeries bx = B.compose(path.x_series);
    if (j > 0) {
      PadicSeries ypow = PadicSeries::constant(Padic::one(p), m);
      for (long k = 0; k < j; ++k) ypow = ypow * yinv;
      gs = gs + bx * ypow;
    } else if (j < 0) {
      PadicSeries ypow = PadicSeries::constant(Padic::one(p), m);
      for (long k = 0; k < -j; ++k) ypow = ypow * path.y_series;
      gs = gs + bx * ypow;
    } else {
      gs = gs + bx;
    }
  }
  PadicSeries integrand(p, m);
  if (!d.weierstrass) {
    Padic dx = Q.x() - P.x();
    integrand = gs.scaled(dx) / path.y_series.scaled(Padic::from_integer(2, p));
  } else {
    Padic dy = Q.y() - P.y();
    integrand = gs.scaled(dy) / curve_.f_derivative().compose(path.x_series);
  }
  return eval_path_integral(integrand, m);
}

IntegralResult Integrator::integrate(const std::vector<Padic>& coeffs,
                                     const DaggerForm* exact,
                                     const CurvePoint& P,
                                     const CurvePoint& Q) const {
  long p = curve_.prime();
  long g = curve_.genus();
  if (static_cast<long>(coeffs.size()) != 2 * g)
    fail(ErrorCode::BadArguments, "coefficient vector must have length 2g");
  if (exact && exact->role() != DaggerForm::Role::Function)
    fail(ErrorCode::BadArguments, "exact part must be a function");
  if (!P.is_infinity()) curve_.require_on_curve(P);
  if (!Q.is_infinity()) curve_.require_on_curve(Q);
  bool exact_nontrivial = exact && !exact->is_zero();

  auto in_w_disc = [&](const CurvePoint& R) {
    return R.is_infinity() || curve_.classify_disc(R).weierstrass;
  };
  auto finish = [&](const Padic& value, long audited,
                    const PrecisionAudit& audit) {
    IntegralResult r;
    r.values = {value};
    r.audited_prec = std::min(audited, value.abs_prec());
    r.audit = audit;
    r.audit.audited_prec = r.audited_prec;
    return r;
  };

  // Basis forms with index >= g have a pole at infinity.
  if (P.is_infinity() || Q.is_infinity()) {
    for (long i = g; i < 2 * g; ++i)
      if (!coeffs[i].is_zero())
        fail(ErrorCode::PoleAtEndpoint,
             "basis differential w_" + std::to_string(i) +
                 " has a pole at infinity");
  }

  bool wP = in_w_disc(P);
  bool wQ = in_w_disc(Q);

  // The involution lemma behind the Weierstrass-disc dispatch holds for odd
  // forms only; an even exact part (even y-exponents) is rejected there.
  if ((wP || wQ) && exact_nontrivial && !exact->all_exponents_odd())
    fail(ErrorCode::EvenForm,
         "exact part must be an odd function for Weierstrass-disc endpoints");

  // Between Weierstrass points every odd meromorphic integral vanishes.
  if (is_weierstrass_point(P) && is_weierstrass_point(Q) && wP && wQ) {
    if (exact_nontrivial) {
      eval_exact_at(*exact, P, curve_);  // also validates convergence
      eval_exact_at(*exact, Q, curve_);
    }
    long n = std::min(endpoint_digits(P), endpoint_digits(Q));
    return finish(Padic::zero(p, std::min(n, curve_.target_digits())),
                  std::min(n, curve_.target_digits()),
                  audit_precision(p, n, 0, 0, {}, tiny_order(n), false));
  }

  if (wP && !wQ) {
    // int_P^Q = int_P^{P'} + (1/2) int_{iota Q}^{Q}
    Padic tiny_part = Padic::zero(p, kExactPrec);
    Padic exact_head = Padic::zero(p, kExactPrec);
    long n_head = curve_.working_prec();
    if (!P.is_infinity()) {
      CurvePoint Pw = curve_.nearest_weierstrass_point(P);
      std::vector<Padic> tinies = tiny_basis(P, Pw, endpoint_digits(P));
      for (long i = 0; i < 2 * g; ++i)
        tiny_part = tiny_part + coeffs[i] * tinies[i];
      n_head = std::min(n_head, endpoint_digits(P));
      if (exact_nontrivial)
        exact_head = eval_exact_at(*exact, Pw, curve_) -
                     eval_exact_at(*exact, P, curve_);
    } else if (exact_nontrivial) {
      // int_inf^inf of the exact part is 0, but it must converge at inf.
      eval_exact_at(*exact, P, curve_);
    }
    CurvePoint iQ = curve_.involution(Q);
    IntegralResult base = integrals_basis(iQ, Q);
    Padic half = Padic::from_integer(1, p) / Padic::from_integer(2, p);
    Padic acc = Padic::zero(p, kExactPrec);
    for (long i = 0; i < 2 * g; ++i)
      acc = acc + coeffs[i] * base.values[i];
    if (exact_nontrivial)
      acc = acc + eval_exact_at(*exact, Q, curve_) -
            eval_exact_at(*exact, iQ, curve_);
    Padic value = tiny_part + exact_head + half * acc;
    long audited = std::min(base.audited_prec, n_head);
    return finish(value, audited, base.audit);
  }

  if (!wP && wQ) {
    IntegralResult r = integrate(coeffs, exact, Q, P);
    for (Padic& v : r.values) v = -v;
    return r;
  }

  if (wP && wQ) {
    // Both Weierstrass discs: two tiny integrals around vanishing middle.
    Padic value = Padic::zero(p, kExactPrec);
    long n = curve_.working_prec();
    for (const CurvePoint* R : {&P, &Q}) {
      if (R->is_infinity()) continue;
      n = std::min(n, endpoint_digits(*R));
    }
    auto side = [&](const CurvePoint& R, bool toward_center) {
      if (R.is_infinity()) return Padic::zero(p, kExactPrec);
      CurvePoint Rw = curve_.nearest_weierstrass_point(R);
      std::vector<Padic> tinies = toward_center ? tiny_basis(R, Rw, n)
                                                : tiny_basis(Rw, R, n);
      Padic acc = Padic::zero(p, kExactPrec);
      for (long i = 0; i < 2 * g; ++i) acc = acc + coeffs[i] * tinies[i];
      if (exact_nontrivial) {
        Padic fR = eval_exact_at(*exact, R, curve_);
        Padic fRw = eval_exact_at(*exact, Rw, curve_);
        acc = toward_center ? acc + (fRw - fR) : acc + (fR - fRw);
      }
      return acc;
    };
    value = side(P, true) + side(Q, false);
    if (exact_nontrivial && (P.is_infinity() || Q.is_infinity())) {
      if (P.is_infinity()) eval_exact_at(*exact, P, curve_);
      if (Q.is_infinity()) eval_exact_at(*exact, Q, curve_);
    }
    long audited = std::min<long>(n, value.abs_prec());
    return finish(value, audited,
                  audit_precision(p, n, 0, 0, {}, tiny_order(n), false));
  }

  // Both non-Weierstrass: the fundamental linear system plus FTC.
  IntegralResult base = integrals_basis(P, Q);
  Padic acc = Padic::zero(p, kExactPrec);
  for (long i = 0; i < 2 * g; ++i) acc = acc + coeffs[i] * base.values[i];
  if (exact_nontrivial)
    acc = acc + evaluate_dagger(*exact, Q) - evaluate_dagger(*exact, P);
  return finish(acc, base.audited_prec, base.audit);
}

}  // namespace coleman
