#pragma once

#include "chemotaxis/grid.hpp"
#include "chemotaxis/model_params.hpp"

namespace chemotaxis {

/// Eigenvalue of −L_h for cosine mode k on an axis with n cells of width h:
/// (2/h²)(1 − cos(πk/n)).
double neumann_eigenvalue(int n, double h, int k);

/// Solves (shift·I − diffusion·L_h) w = f exactly in the discrete cosine basis.
/// Requires shift > 0 and diffusion >= 0.
Field solve_shifted(const Field& f, double shift, double diffusion);

/// The resolvent (μI − L_h)^{-1} f under homogeneous Neumann conditions.
Field resolvent_apply(const Field& f, double mu);

/// v = (μI − L_h)^{-1}(ν u^γ). Throws PreconditionError on negative u.
Field signal_from_density(const Field& u, const ModelParams& params);

}  // namespace chemotaxis
