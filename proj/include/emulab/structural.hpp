#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Closed-economy structural block: an IS-LM demand side plus an
// expectations-augmented supply curve, all variables measured as deviations
// from a reference path.
//
//   (IS)      y = k_is g - s r + u_d
//   (LM)      m = y + p - b_lm r - u_m
//   (supply)  y = e (p - p_e)
//
// Eliminating r and p gives the reduced form consumed by the policy-game
// modules,
//
//   y = alpha_m (m - p_e) + alpha_g g + alpha_ud u_d + alpha_um u_m
//   p = p_e + y / e
//
// with every alpha positive. The game layer measures instruments and
// disturbances in output-effect units (one unit of policy mix moves y by
// one unit), so only the inflation slope c = 1/e crosses the boundary.
//
///////////////////////////////////////////////////////////////////////////////

#include <emulab/types.hpp>

namespace emulab {

struct StructuralParams {
  Scalar k_is;  // fiscal multiplier in IS
  Scalar s;     // interest-rate sensitivity of demand
  Scalar b_lm;  // interest-rate semi-elasticity of money demand
  Scalar e;     // supply slope: output response to a price surprise

  // Throws std::invalid_argument unless all four are finite and positive.
  void validate() const;
};

struct StructuralShock {
  Scalar u_d = 0;  // goods-demand shock
  Scalar u_m = 0;  // money-demand shock
};

struct ReducedForm {
  Scalar alpha_m;   // output response to m
  Scalar alpha_g;   // output response to g
  Scalar alpha_ud;  // output response to u_d
  Scalar alpha_um;  // output response to u_m
  Scalar c;         // inflation response to output, 1/e
};

// Joint equilibrium of the three structural equations.
struct StructuralSolution {
  Scalar y;  // activity gap
  Scalar p;  // price deviation
  Scalar r;  // interest-rate deviation
};

// Solves the 3x3 linear system for (y, p, r) given the two instruments,
// the anticipated price and the shocks.
StructuralSolution structural_solve(const StructuralParams& params, Scalar m,
                                    Scalar g, Scalar p_e,
                                    const StructuralShock& shock = {});

ReducedForm reduced_form_coefficients(const StructuralParams& params);

// Aggregate demand disturbance in policy-mix units: the u of
// y = M - M_e + u once instruments carry unit output effect.
Scalar composite_shock(const StructuralParams& params,
                       const StructuralShock& shock);

// Fixed-point price expectation for fully anticipated policy: with p_e at
// this value, m = m_e, g = g_e and zero shocks leave y = 0.
Scalar rational_price_expectation(const StructuralParams& params, Scalar m_e,
                                  Scalar g_e);

}  // namespace emulab
