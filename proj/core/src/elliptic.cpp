#include "chemotaxis/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "chemotaxis/errors.hpp"
#include "cosine_transform.hpp"

namespace chemotaxis {

double neumann_eigenvalue(int n, double h, int k) {
  const double s = std::sin(std::numbers::pi * k / (2.0 * n));
  return 4.0 / (h * h) * s * s;
}

Field solve_shifted(const Field& f, double shift, double diffusion) {
  if (!(shift > 0.0) || !std::isfinite(shift)) throw DomainError("solve_shifted: shift must be > 0");
  if (!(diffusion >= 0.0) || !std::isfinite(diffusion)) throw DomainError("solve_shifted: diffusion must be >= 0");
  const Grid& g = f.grid();
  const detail::CosineTransform transform(g);

  std::vector<double> lx(static_cast<std::size_t>(g.nx()));
  for (int k = 0; k < g.nx(); ++k) lx[static_cast<std::size_t>(k)] = neumann_eigenvalue(g.nx(), g.hx(), k);
  std::vector<double> ly(static_cast<std::size_t>(g.ny()), 0.0);
  if (g.dim() == 2)
    for (int k = 0; k < g.ny(); ++k) ly[static_cast<std::size_t>(k)] = neumann_eigenvalue(g.ny(), g.hy(), k);

  Field out = f;
  transform.forward(out.values());
  const double inv_scale = 1.0 / transform.roundtrip_scale();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double symbol = shift + diffusion * (lx[static_cast<std::size_t>(i)] + ly[static_cast<std::size_t>(j)]);
      out.at(i, j) *= inv_scale / symbol;
    }
  transform.backward(out.values());
  return out;
}

Field resolvent_apply(const Field& f, double mu) {
  if (!(mu > 0.0)) throw DomainError("resolvent_apply: mu must be > 0");
  return solve_shifted(f, mu, 1.0);
}

Field signal_from_density(const Field& u, const ModelParams& params) {
  Field source(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!(u[k] >= 0.0)) throw PreconditionError("signal_from_density: density must be nonnegative");
    source[k] = params.nu * (params.gamma == 1.0 ? u[k] : std::pow(u[k], params.gamma));
  }
  Field v = resolvent_apply(source, params.mu);
  // The exact resolvent of a nonnegative source is nonnegative; clip rounding noise.
  for (double& x : v.values())
    if (x < 0.0) x = 0.0;
  return v;
}

}  // namespace chemotaxis
