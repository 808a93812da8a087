#include "swerect/boundary.hpp"
#include "swerect/spatial_operator.hpp"

namespace swerect {

LiftingSource LiftingSource::from_functions(const Grid& grid, SpaceTimeFunction value,
                                            SpaceTimeFunction time_derivative) {
  LiftingSource s;
  s.value = [grid, value = std::move(value)](double t) { return sample(grid, value, t); };
  s.time_derivative = [grid, dt = std::move(time_derivative)](double t) { return sample(grid, dt, t); };
  return s;
}

StateField LiftedProblem::shift_initial(const StateField& U0) const { return U0 - lifting.value(0.0); }

StateField LiftedProblem::recover(const StateField& U_prime, double t) const {
  return U_prime + lifting.value(t);
}

LiftedProblem lift_nonhomogeneous(const LiftingSource& ug, StateProvider forcing, const PhysicalConstants& p,
                                  Regime regime) {
  LiftedProblem out;
  out.spec = bc_catalog(regime, p);
  out.lifting = ug;
  const UpwindOperator op(p);
  out.forcing = [ug, forcing = std::move(forcing), op, p](double t) {
    const StateField g = ug.value(t);
    StateField f = forcing ? forcing(t) : StateField(g.grid());
    f -= ug.time_derivative(t);
    f -= op.apply(g);
    f -= apply_B(g, p);
    return f;
  };
  return out;
}

}  // namespace swerect
