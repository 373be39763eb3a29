#pragma once

#include <string>

#include "ptspeed/bloch_basis.hpp"
#include "ptspeed/liouvillian.hpp"

namespace ptspeed {

/* Two-level model family: coherent drive g > 0 against decoherence rate
   gamma >= 0. */
struct TwoLevelParams {
    double g = 1.0;
    double gamma = 0.0;
};

void validate_params(const TwoLevelParams& p);

/* H = (g/2) sigma_z, L = sqrt(gamma) sigma_z: pure dephasing around the
   drive axis. */
LindbladModel dephasing_model(const TwoLevelParams& p);

/* H = (g/2) sigma_x, L = sqrt(gamma) sigma_z: drive transverse to the
   decoherence axis.  The competition produces oscillatory, exceptional and
   overdamped spectral regimes at g > gamma, g = gamma, g < gamma. */
LindbladModel pt_model(const TwoLevelParams& p);

/* Closed-form squared speed of the dephasing model,
   v^2(t) = e^{-4 gamma t} (4 gamma^2 + g^2) (r_x(0)^2 + r_y(0)^2). */
double dephasing_speed_closed_form(const TwoLevelParams& p, const BlochState& r0, double t);

/* Closed-form trajectory of the transverse model.  With w = sqrt(g^2 - gamma^2):
     r_x(t) = e^{-2 gamma t} r_x(0)
     e^{gamma t} r_y(t) = [cos wt - (gamma/w) sin wt] r_y(0) - (g/w) sin wt r_z(0)
     e^{gamma t} r_z(t) = (g/w) sin wt r_y(0) + [cos wt + (gamma/w) sin wt] r_z(0)
   The overdamped regime uses the hyperbolic continuation, and a polynomial
   branch covers |g - gamma| <= 1e-8 g so the degenerate point stays exact. */
BlochState pt_closed_form(const TwoLevelParams& p, const BlochState& r0, double t);

/* Named initial Bloch states: up_z, down_z, plus_x. */
RealVector named_init(const std::string& name);

/* Named two-level models: "pt", "dephasing". */
LindbladModel named_model(const std::string& name, const TwoLevelParams& p);

}  // namespace ptspeed
