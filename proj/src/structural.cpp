#include <emulab/structural.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace emulab {

namespace {

void require_positive(Scalar value, const char* name) {
  if (!std::isfinite(value) || !(value > 0)) {
    throw std::invalid_argument(std::string("StructuralParams: ") + name +
                                " must be finite and > 0");
  }
}

// Common denominator of the reduced form, 1/e + 1 + b/s > 0.
Scalar reduced_denominator(const StructuralParams& params) {
  return Scalar(1) / params.e + Scalar(1) + params.b_lm / params.s;
}

}  // namespace

void StructuralParams::validate() const {
  require_positive(k_is, "k_is");
  require_positive(s, "s");
  require_positive(b_lm, "b_lm");
  require_positive(e, "e");
}

StructuralSolution structural_solve(const StructuralParams& params, Scalar m,
                                    Scalar g, Scalar p_e,
                                    const StructuralShock& shock) {
  params.validate();
  if (!(std::abs(reduced_denominator(params)) > Scalar(1e-300))) {
    throw std::runtime_error("structural_solve: singular system");
  }

  // Unknowns ordered (y, p, r).
  Mat3 system;
  system << 1, 0, params.s,          // IS
      1, 1, -params.b_lm,            // LM
      1, -params.e, 0;               // supply
  const Vec3 rhs(params.k_is * g + shock.u_d,  //
                 m + shock.u_m,                //
                 -params.e * p_e);
  const Vec3 x = system.partialPivLu().solve(rhs);
  return {x[0], x[1], x[2]};
}

ReducedForm reduced_form_coefficients(const StructuralParams& params) {
  params.validate();
  const Scalar d = reduced_denominator(params);
  ReducedForm rf;
  rf.alpha_m = Scalar(1) / d;
  rf.alpha_g = params.b_lm * params.k_is / params.s / d;
  rf.alpha_ud = params.b_lm / params.s / d;
  rf.alpha_um = Scalar(1) / d;
  rf.c = Scalar(1) / params.e;
  return rf;
}

Scalar composite_shock(const StructuralParams& params,
                       const StructuralShock& shock) {
  const ReducedForm rf = reduced_form_coefficients(params);
  return (rf.alpha_ud * shock.u_d + rf.alpha_um * shock.u_m) / rf.alpha_m;
}

Scalar rational_price_expectation(const StructuralParams& params, Scalar m_e,
                                  Scalar g_e) {
  params.validate();
  // p_e = m_e + (alpha_g / alpha_m) g_e is the unique fixed point of
  // p_e = p under anticipated policy and zero shocks.
  return m_e + params.b_lm * params.k_is / params.s * g_e;
}

}  // namespace emulab
