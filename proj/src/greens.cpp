#include "peakon/greens.hpp"

#include <cmath>
#include <string>

#include "peakon/errors.hpp"

namespace peakon {

CHKernel::CHKernel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error("CHKernel: alpha must be positive and finite, got " + std::to_string(alpha));
  }
}

double eval_G(const CHKernel& kernel, double x) {
  const double a = kernel.alpha();
  return std::exp(-std::abs(x) / a) / (2.0 * a);
}

double eval_Gp(const CHKernel& kernel, double x, Side side) {
  const double a = kernel.alpha();
  const double mag = std::exp(-std::abs(x) / a) / (2.0 * a * a);
  if (x > 0.0) return -mag;
  if (x < 0.0) return mag;
  // x - x_i -> 0 from the left means G'(0-) > 0.
  return side == Side::Left ? mag : -mag;
}

double eval_derivative(const CHKernel& kernel, int order, double x, Side side) {
  switch (order) {
    case 0:
      return eval_G(kernel, x);
    case 1:
      return eval_Gp(kernel, x, side);
    default:
      throw Error("kernel derivative order must be 0 or 1, got " + std::to_string(order));
  }
}

double convolve(const CHKernel& kernel, const DiscreteMeasure& mu, double x, int order,
                Side side) {
  if (order != 0 && order != 1) {
    throw Error("convolve: order must be 0 or 1, got " + std::to_string(order));
  }
  double s = 0.0;
  for (const Atom& atom : mu.atoms()) {
    s += atom.weight * eval_derivative(kernel, order, x - atom.position, side);
  }
  return s;
}

KernelConstants constants(const CHKernel& kernel) {
  const double a = kernel.alpha();
  KernelConstants c{};
  c.sup_G = 1.0 / (2.0 * a);
  c.sup_Gp = 1.0 / (2.0 * a * a);
  // G rises from 0 to 1/(2a) and falls back: variation 2 sup_G.
  c.var_G = 1.0 / a;
  // G' rises 0 -> 1/(2a^2), jumps down by 1/a^2, rises back to 0.
  c.var_Gp = 2.0 / (a * a);
  c.l1_G = 1.0;
  c.l1_Gp = 1.0 / a;
  c.bv_G = c.l1_G + c.var_G;
  c.bv_Gp = c.l1_Gp + c.var_Gp;
  c.holder_L = c.var_G * c.bv_G + c.var_Gp * c.bv_Gp;
  return c;
}

}  // namespace peakon
