#pragma once

#include <array>

#include "peakon/measure.hpp"

namespace peakon {

/// Which one-sided limit to take for the kernel derivative at its kink.
enum class Side { Left, Right };

/// Green's function of the modified Helmholtz operator (1 - alpha^2 d^2/dx^2):
///   G(x) = exp(-|x|/alpha) / (2 alpha).
///
/// G is Lipschitz and even; G' is BV with a single jump at 0. Where a single
/// value of G' is needed at 0 the left-continuous representative
/// G'(0-) = 1/(2 alpha^2) is used.
class CHKernel {
 public:
  /// Highest derivative order carried by the kernel (G in W^{1,1}, G' in BV).
  static constexpr int kOrder = 1;

  explicit CHKernel(double alpha);

  [[nodiscard]] double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// Closed-form norms of G and G'. The per-order arrays are indexed by
/// derivative order 0..kOrder.
struct KernelConstants {
  double sup_G;
  double sup_Gp;
  double var_G;
  double var_Gp;
  double l1_G;
  double l1_Gp;
  double bv_G;
  double bv_Gp;
  /// sum over k of var(G^(k)) * ||G^(k)||_BV; the square-root constant of the
  /// H^1-versus-BL estimate.
  double holder_L;

  [[nodiscard]] std::array<double, CHKernel::kOrder + 1> sup() const { return {sup_G, sup_Gp}; }
  [[nodiscard]] std::array<double, CHKernel::kOrder + 1> var() const { return {var_G, var_Gp}; }
  [[nodiscard]] std::array<double, CHKernel::kOrder + 1> bv() const { return {bv_G, bv_Gp}; }
};

double eval_G(const CHKernel& kernel, double x);

/// G'(x); at x == 0 returns the one-sided limit selected by `side`
/// (Left by default, the left-continuous representative).
double eval_Gp(const CHKernel& kernel, double x, Side side = Side::Left);

/// G^(order)(x) for order in {0, 1}.
double eval_derivative(const CHKernel& kernel, int order, double x, Side side = Side::Left);

/// (G^(order) * mu)(x) = sum_i w_i G^(order)(x - x_i). For order 1 and x on an
/// atom, `side` picks which one-sided limit of the field is returned.
double convolve(const CHKernel& kernel, const DiscreteMeasure& mu, double x, int order,
                Side side = Side::Left);

KernelConstants constants(const CHKernel& kernel);

}  // namespace peakon
