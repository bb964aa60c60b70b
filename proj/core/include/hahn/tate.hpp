#pragma once

// Truncated elements of the perfectoid Tate algebra R_n over C, the disk
// seminorms at origin-centered points, and evaluation homomorphisms
// R_n -> C(y) given by images of the coordinates.

#include <span>
#include <vector>

#include "hahn/fields.hpp"

namespace hahn {

class TateAlgebra {
 public:
  TateAlgebra(GroundField ground, std::size_t variables);

  const GroundField& ground() const { return ground_; }
  std::size_t variables() const { return n_; }
  /// Gauss profile: t has weight 1, every x_i weight 0.
  const ProfilePtr& profile() const { return profile_; }

  /// c * t^a * x^exps, one exponent per variable.
  TruncatedSeries monomial(Coeff c, const Rat& a, std::span<const Rat> exps) const;
  /// x_i, 1-based.
  TruncatedSeries variable(std::size_t i) const;

 private:
  GroundField ground_;
  std::size_t n_;
  ProfilePtr profile_;
};

/// A series over a Tate profile whose variable exponents are >= 0 and lie
/// in Z[1/p]. The precision is in t-adic (Gauss) terms.
class TateElement {
 public:
  TateElement(const TateAlgebra& algebra, TruncatedSeries series);

  const TruncatedSeries& series() const { return series_; }
  std::size_t variables() const { return series_.weights().dimension() - 1; }

  /// Element of the integral subring O_C<x^(1/p^inf)>: Gauss norm <= 1.
  bool isIntegral() const;

 private:
  TruncatedSeries series_;
};

/// Images of x_1..x_n in C(y), each of valuation >= 0.
class SubstitutionMap {
 public:
  SubstitutionMap(const ResidueField& target, std::vector<TruncatedSeries> images);

  const ResidueField& target() const { return target_; }
  const std::vector<TruncatedSeries>& images() const { return images_; }

 private:
  ResidueField target_;
  std::vector<TruncatedSeries> images_;
};

/// Additive value of |f| at the origin-centered disk with radius values rho:
/// min over terms of (t-exponent + sum q_i rho_i). Throws
/// IndeterminateFromPrecision when the minimum is not below the precision.
Rat diskSeminorm(const TateElement& f, std::span<const Rat> rho);

enum class CutRule {
  /// Keep terms whose point weight is <= vEps.
  PointWeight,
  /// Keep every monomial x^m whose coefficient a_m has valuation <= vEps.
  CoefficientNorm,
};

/// f_eps: the finite part of f of value >= eps at the point rho. The
/// remainder f - f_eps has seminorm > vEps; throws IndeterminateFromPrecision
/// if the precision of f does not exceed vEps.
TateElement finiteApprox(const TateElement& f, const Rat& vEps, std::span<const Rat> rho,
                         CutRule rule = CutRule::PointWeight);

struct EpsilonBound {
  /// vEps = v(a_M) + M rho for the chosen weight-minimal term a_M x^M.
  Rat bound;
  /// diskSeminorm(f, rho); certified <= bound.
  Rat seminorm;
  ExponentVec term;
};

/// The lower bound |f|_x >= eps at a Type II point (rho in Z[1/p]) of the
/// one-variable disk.
EpsilonBound typeIILowerBound(const TateElement& f, const Rat& rho);

/// Evaluates f at the images of sigma. Each monomial x^Q maps to the product
/// of image_i^Q_i (Frobenius roots, then integer powers). The result has
/// precision min(prec f, workPrec); throws PrecisionUnderflow when the image
/// precisions cannot support that.
TruncatedSeries applySubstitution(const SubstitutionMap& sigma, const TateElement& f,
                                  const Rat& workPrec);

/// R_n -> R_k forgetting x_{k+1}..x_n (they map to 0).
TateElement restrictVariables(const TateElement& f, const TateAlgebra& target);

}  // namespace hahn
